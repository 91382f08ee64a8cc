"""Attribute weights as interval grey numbers.

Subjective weights come from a group of experts (one crisp vector each),
objective weights from the normalized matrix by a maximum-deviation model
and by entropy on each of the four tuple components.  Both are combined
into a final interval weight per attribute.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DegenerateError, GreyMixError

SUBJECTIVE = "subjective"
OBJECTIVE = "objective"
FINAL = "final"


class DegenerateMatrixError(DegenerateError):
    """Every plan is identical on every attribute."""


class EntropyDegenerateError(DegenerateError):
    """All columns have maximal entropy, so entropy weights are 0/0."""


@dataclass(frozen=True)
class GreyWeightVector:
    lo: np.ndarray
    hi: np.ndarray
    role: str = FINAL

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise GreyMixError("weight bounds must be 1-D arrays of equal length")
        if np.any(lo > hi):
            raise GreyMixError(f"weight lower bound exceeds upper bound: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __len__(self):
        return len(self.lo)

    def pairs(self):
        return [[float(a), float(b)] for a, b in zip(self.lo, self.hi)]

    @classmethod
    def from_pairs(cls, pairs, role=FINAL):
        arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], role)


@dataclass(frozen=True)
class GreyFuzzyWeights:
    """Per attribute: fuzzy weight part [w_lo, w_hi] and grey part [s_lo, s_hi]."""

    w_lo: np.ndarray
    w_hi: np.ndarray
    s_lo: np.ndarray
    s_hi: np.ndarray

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in (self.w_lo, self.w_hi, self.s_lo, self.s_hi)]
        if len({a.shape for a in arrays}) != 1:
            raise GreyMixError("grey-fuzzy weight parts must have equal length")
        if np.any(arrays[0] > arrays[1]) or np.any(arrays[2] > arrays[3]):
            raise GreyMixError("grey-fuzzy weight bounds out of order")
        for name, a in zip(("w_lo", "w_hi", "s_lo", "s_hi"), arrays):
            object.__setattr__(self, name, a)

    def __len__(self):
        return len(self.w_lo)


def aggregate_subjective(experts: Sequence[Sequence[float]]) -> GreyWeightVector:
    """Interval weight per attribute spanning the experts' min and max."""
    if len(experts) < 1:
        raise GreyMixError("need at least one expert weight vector")
    lengths = {len(e) for e in experts}
    if len(lengths) != 1:
        raise GreyMixError(f"expert weight vectors have different lengths: {sorted(lengths)}")
    a = np.asarray(experts, dtype=float)
    if np.any(a < 0):
        raise GreyMixError("expert weights must be nonnegative")
    return GreyWeightVector(a.min(axis=0), a.max(axis=0), SUBJECTIVE)


def pairwise_deviation(x: np.ndarray) -> np.ndarray:
    """Sum over all ordered plan pairs of the 4-tuple distance, per attribute.

    ``x`` is an (n, m, 4) array; returns shape (m,).
    """
    diff = x[:, None, :, :] - x[None, :, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1)).sum(axis=(0, 1))


def objective_optimal(x: np.ndarray) -> np.ndarray:
    """Maximum-deviation weights, rescaled to sum to one.

    The maximizer of sum_j D_j * b_j on the unit sphere is D / ||D||; after
    sum-normalization each attribute's weight is its share of the total
    pairwise deviation.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[0] < 2:
        raise GreyMixError("maximum-deviation weights need at least two plans")
    dev = pairwise_deviation(x)
    total = dev.sum()
    if total <= 0:
        raise DegenerateMatrixError("all plans are identical on every attribute")
    return dev / total


def entropy_values(x: np.ndarray, k: int) -> np.ndarray:
    """Entropy E_j of component ``k`` (1..4) in each column, shape (m,)."""
    if k not in (1, 2, 3, 4):
        raise GreyMixError(f"component index must be 1..4, got {k}")
    col = np.asarray(x, dtype=float)[:, :, k - 1]
    n = col.shape[0]
    if np.any(col < 0):
        raise GreyMixError("entropy weights need nonnegative components")
    sums = col.sum(axis=0)
    if n == 1:
        return np.ones(col.shape[1])
    # An all-zero column carries no information: treat it as maximal entropy.
    safe = np.where(sums > 0, sums, 1.0)
    p = np.where(sums > 0, col / safe, 1.0 / n)
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > 0, p * np.log(p), 0.0)
    return -plogp.sum(axis=0) / np.log(n)


def objective_entropy(x: np.ndarray, k: int) -> np.ndarray:
    eta = 1.0 - entropy_values(x, k)
    # p log p roundoff can push E a hair past 1
    eta = np.where(np.abs(eta) < 1e-12, 0.0, eta)
    total = eta.sum()
    if total <= 0:
        raise EntropyDegenerateError(f"all columns uniform in component {k}")
    return eta / total


def comprehensive_objective(optimal: Sequence[float], *entropy: Sequence[float]) -> GreyWeightVector:
    """Envelope [min, max] of the five objective weight vectors."""
    vectors = [optimal, *entropy]
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise GreyMixError(f"objective weight vectors have different lengths: {sorted(lengths)}")
    stack = np.asarray(vectors, dtype=float)
    return GreyWeightVector(stack.min(axis=0), stack.max(axis=0), OBJECTIVE)


def _cross_normalize(lo: np.ndarray, hi: np.ndarray, what: str):
    sum_lo, sum_hi = lo.sum(), hi.sum()
    if sum_lo <= 0 or sum_hi <= 0:
        raise DegenerateError(f"{what}: zero sum, cannot normalize")
    return lo / sum_hi, hi / sum_lo


def final_weights(alpha: GreyWeightVector, beta: GreyWeightVector) -> GreyWeightVector:
    """Combine subjective and objective interval weights.

    Products are taken bound by bound and each lower bound is divided by the
    sum of upper products (and vice versa), so the result is as wide as the
    inputs allow.
    """
    if len(alpha) != len(beta):
        raise GreyMixError(f"subjective ({len(alpha)}) and objective ({len(beta)}) weights differ in length")
    if np.any(alpha.lo < 0) or np.any(beta.lo < 0):
        raise GreyMixError("weights must be nonnegative")
    lo, hi = _cross_normalize(alpha.lo * beta.lo, alpha.hi * beta.hi, "final weights")
    return GreyWeightVector(lo, hi, FINAL)


def normalize_grey_fuzzy_weights(weights: GreyWeightVector, grey=None) -> GreyFuzzyWeights:
    """Normalize fuzzy and grey weight parts by the lo/sum(hi), hi/sum(lo) pattern.

    ``grey`` is an (m, 2) array of weight grey degrees; missing means [1, 1]
    for every attribute.
    """
    m = len(weights)
    if grey is None:
        grey = np.ones((m, 2))
    grey = np.asarray(grey, dtype=float).reshape(-1, 2)
    if len(grey) != m:
        raise GreyMixError(f"{len(grey)} weight grey degrees for {m} attributes")
    w_lo, w_hi = _cross_normalize(weights.lo, weights.hi, "fuzzy weight part")
    s_lo, s_hi = _cross_normalize(grey[:, 0], grey[:, 1], "grey weight part")
    return GreyFuzzyWeights(w_lo, w_hi, s_lo, s_hi)
