"""Scoring plans against the ideal plans of the weighted matrix.

All functions work on numpy arrays: a matrix of 4-tuples has shape
(n, m, 4) and grey degrees have shape (n, m, 2).  Four scores are offered:
TOPSIS closeness, incidence relative approach, incidence membership and
the max-entropy comprehensive incidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .core import DegenerateError, GreyMixError
from .weighting import GreyFuzzyWeights

TOPSIS = "topsis"
INCIDENCE_APPROACH = "incidence-approach"
MEMBERSHIP = "membership"
MAX_ENTROPY = "max-entropy"
METHODS = (TOPSIS, INCIDENCE_APPROACH, MEMBERSHIP, MAX_ENTROPY)

PAPER_FORM = "paper"
CLASSIC_FORM = "classic"

LOGISTIC = "logistic"
PRINTED = "printed"

WHITENED = "whitened"
SPLIT = "split"


@dataclass(frozen=True)
class RankerConfig:
    danger: float = 0.5
    rho: float = 0.5
    theta_plus: float = 0.5
    theta_minus: float = 0.5
    incidence_form: str = PAPER_FORM
    beta_form: str = LOGISTIC
    weight_application: str = WHITENED

    def __post_init__(self):
        if not 0.0 <= self.danger <= 1.0:
            raise GreyMixError(f"danger index must lie in [0, 1], got {self.danger}")
        if not 0.0 < self.rho < 1.0:
            raise GreyMixError(f"rho must lie in (0, 1), got {self.rho}")
        if not (0.0 <= self.theta_minus < 1.0 and 0.0 < self.theta_plus <= 1.0):
            raise GreyMixError("theta_plus must lie in (0, 1] and theta_minus in [0, 1)")
        if not math.isclose(self.theta_plus + self.theta_minus, 1.0, abs_tol=1e-9):
            raise GreyMixError(f"theta_plus + theta_minus must equal 1, got {self.theta_plus + self.theta_minus}")
        if self.incidence_form not in (PAPER_FORM, CLASSIC_FORM):
            raise GreyMixError(f"incidence_form must be 'paper' or 'classic', got {self.incidence_form!r}")
        if self.beta_form not in (LOGISTIC, PRINTED):
            raise GreyMixError(f"beta_form must be 'logistic' or 'printed', got {self.beta_form!r}")
        if self.weight_application not in (WHITENED, SPLIT):
            raise GreyMixError(f"weight_application must be 'whitened' or 'split', got {self.weight_application!r}")


def ranking_of(scores) -> Tuple[int, ...]:
    """Plan indices by descending score; ties keep input order."""
    scores = np.asarray(scores, dtype=float)
    return tuple(int(i) for i in np.argsort(-scores, kind="stable"))


@dataclass(frozen=True)
class MethodScores:
    method: str
    scores: Tuple[float, ...]
    ranking: Tuple[int, ...] = field(default=None)

    def __post_init__(self):
        scores = tuple(float(s) for s in self.scores)
        object.__setattr__(self, "scores", scores)
        expected = ranking_of(scores)
        if self.ranking is None:
            object.__setattr__(self, "ranking", expected)
        elif tuple(self.ranking) != expected:
            raise GreyMixError(f"ranking {self.ranking} does not match scores for {self.method}")
        else:
            object.__setattr__(self, "ranking", tuple(int(i) for i in self.ranking))

    def ties(self):
        """Groups (tuples of plan indices) that share a score."""
        groups = {}
        for i, s in enumerate(self.scores):
            groups.setdefault(s, []).append(i)
        return [tuple(g) for g in groups.values() if len(g) > 1]


@dataclass(frozen=True)
class IdealPair:
    positive: np.ndarray
    negative: np.ndarray


def blend_preference(x: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Average each cell with its plan's preference tuple: z_ij = (q_i + x_ij) / 2."""
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    if q.shape != (x.shape[0], 4):
        raise GreyMixError(f"preference array shape {q.shape} does not fit matrix {x.shape}")
    return 0.5 * (q[:, None, :] + x)


def weight_and_grey(z: np.ndarray, mu: np.ndarray, weights: GreyFuzzyWeights, application: str = WHITENED):
    """Apply grey-fuzzy weights to the blended matrix.

    With ``application="whitened"`` every component of a tuple is scaled by
    the midpoint of its attribute's fuzzy weight interval.  ``"split"``
    scales components 1 and 2 by the lower weight and 3 and 4 by the upper
    one, i.e. multiplies by the trapezoid (w_lo, w_lo, w_hi, w_hi).  The
    grey degree becomes [mu_lo * s_lo, mu_hi * s_hi] clamped to [0, 1].

    Returns the weighted (n, m, 4) array and the (n, m, 2) grey array.
    """
    z = np.asarray(z, dtype=float)
    mu = np.asarray(mu, dtype=float)
    m = z.shape[1]
    if len(weights) != m or mu.shape != z.shape[:2] + (2,):
        raise GreyMixError("weights, grey degrees and matrix dimensions disagree")
    if application == WHITENED:
        mid = 0.5 * (weights.w_lo + weights.w_hi)
        scale = np.stack([mid] * 4, axis=-1)
    elif application == SPLIT:
        scale = np.stack([weights.w_lo, weights.w_lo, weights.w_hi, weights.w_hi], axis=-1)
    else:
        raise GreyMixError(f"unknown weight application {application!r}")
    y = z * scale[None, :, :]
    t_lo = np.clip(mu[..., 0] * weights.s_lo[None, :], 0.0, 1.0)
    t_hi = np.clip(mu[..., 1] * weights.s_hi[None, :], 0.0, 1.0)
    t = np.stack([t_lo, np.maximum(t_lo, t_hi)], axis=-1)
    return y, t


def sufficiency(t, danger: float):
    """Information sufficiency 1 - F for grey degree(s) ``t`` (last axis = [lo, hi]).

    F = M + (2 * danger - 1) * D, with M the midpoint and D the half-width, so
    danger 0 gives 1 - lo and danger 1 gives 1 - hi.
    """
    if not 0.0 <= danger <= 1.0:
        raise GreyMixError(f"danger index must lie in [0, 1], got {danger}")
    t = np.asarray(t, dtype=float)
    mid = 0.5 * (t[..., 0] + t[..., 1])
    half = 0.5 * (t[..., 1] - t[..., 0])
    g = 1.0 - (mid + (2.0 * danger - 1.0) * half)
    return float(g) if np.ndim(g) == 0 else g


def apply_sufficiency(y: np.ndarray, t: np.ndarray, danger: float) -> np.ndarray:
    return np.asarray(y, dtype=float) * sufficiency(t, danger)[..., None]


def ideal_vectors(y: np.ndarray) -> IdealPair:
    """Componentwise column max / min over plans."""
    y = np.asarray(y, dtype=float)
    if y.shape[0] < 1:
        raise GreyMixError("need at least one plan")
    return IdealPair(y.max(axis=0), y.min(axis=0))


def topsis_scores(y: np.ndarray, ideal: IdealPair) -> MethodScores:
    y = np.asarray(y, dtype=float)
    d_plus = np.sqrt(((y - ideal.positive) ** 2).sum(axis=(1, 2)))
    d_minus = np.sqrt(((y - ideal.negative) ** 2).sum(axis=(1, 2)))
    denom = d_plus + d_minus
    if np.any(denom == 0):
        raise DegenerateError("a plan coincides with both ideals; all plans are identical")
    return MethodScores(TOPSIS, d_minus / denom)


def cell_distances(y: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """4-tuple distance of every cell to the reference tuple of its column, (n, m)."""
    return np.sqrt(((np.asarray(y, dtype=float) - reference[None, :, :]) ** 2).sum(axis=-1))


def incidence_coefficients(y: np.ndarray, ideal: IdealPair, rho: float = 0.5, form: str = PAPER_FORM):
    """Grey incidence coefficient matrices (P+, P-).

    ``form="paper"`` divides by (delta + max delta); ``"classic"`` uses the
    usual Deng denominator (delta + rho * max delta).
    """
    if not 0.0 < rho < 1.0:
        raise GreyMixError(f"rho must lie in (0, 1), got {rho}")
    if form not in (PAPER_FORM, CLASSIC_FORM):
        raise GreyMixError(f"unknown incidence form {form!r}")
    return (
        _coefficients(cell_distances(y, ideal.positive), rho, form),
        _coefficients(cell_distances(y, ideal.negative), rho, form),
    )


def _coefficients(delta: np.ndarray, rho: float, form: str) -> np.ndarray:
    d_min, d_max = delta.min(), delta.max()
    if d_max == 0:
        return np.ones_like(delta)
    offset = d_max if form == PAPER_FORM else rho * d_max
    return (d_min + rho * d_max) / (delta + offset)


def incidence_degree(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 2 or p.shape[1] < 1:
        raise GreyMixError("coefficient matrix must be (n, m) with m >= 1")
    return p.mean(axis=1)


def incidence_relative_approach(g_plus, g_minus, theta_plus=0.5, theta_minus=0.5) -> MethodScores:
    g_plus = np.asarray(g_plus, dtype=float)
    g_minus = np.asarray(g_minus, dtype=float)
    if theta_plus == 1.0 and theta_minus == 0.0:
        return MethodScores(INCIDENCE_APPROACH, g_plus)
    if not math.isclose(theta_plus + theta_minus, 1.0, abs_tol=1e-9) or theta_plus <= 0 or theta_minus <= 0:
        raise GreyMixError("preference coefficients must be positive and sum to 1")
    num = g_plus * theta_plus
    return MethodScores(INCIDENCE_APPROACH, num / (num + g_minus * theta_minus))


def membership_scores(g_plus, g_minus) -> MethodScores:
    """Closed-form minimizer of sum((1-u)^2 G+^2 + u^2 G-^2)."""
    gp2 = np.asarray(g_plus, dtype=float) ** 2
    gm2 = np.asarray(g_minus, dtype=float) ** 2
    return MethodScores(MEMBERSHIP, gp2 / (gp2 + gm2))


def max_entropy_beta(g_plus, g_minus, form: str = LOGISTIC) -> Tuple[float, float]:
    """Weights (b1, b2) of the positive and complemented negative incidence.

    Maximizing b1*sum(G+) + b2*sum(1-G-) + entropy(b) on the simplex gives a
    logistic in S - n with S = sum(G+ + G-).  ``form="printed"`` returns the
    variant with exponent S in the denominators, which does not sum to one;
    it exists only for comparison.
    """
    g_plus = np.asarray(g_plus, dtype=float)
    g_minus = np.asarray(g_minus, dtype=float)
    n = len(g_plus)
    s = float((g_plus + g_minus).sum())
    if form == PRINTED:
        denom = 1.0 + math.exp(s)
        return math.exp(s - n) / denom, 1.0 / denom
    if form != LOGISTIC:
        raise GreyMixError(f"unknown beta form {form!r}")
    x = s - n
    if x >= 0:
        b2 = math.exp(-x) / (1.0 + math.exp(-x))
        b1 = 1.0 - b2
    else:
        b1 = math.exp(x) / (1.0 + math.exp(x))
        b2 = 1.0 - b1
    return b1, b2


def comprehensive_incidence(g_plus, g_minus, beta1: float, beta2: float) -> MethodScores:
    if beta1 < 0 or beta2 < 0:
        raise GreyMixError("incidence weights must be nonnegative")
    g_plus = np.asarray(g_plus, dtype=float)
    g_minus = np.asarray(g_minus, dtype=float)
    return MethodScores(MAX_ENTROPY, beta1 * g_plus + beta2 * (1.0 - g_minus))
