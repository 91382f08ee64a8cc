"""Value types shared by the whole pipeline.

Every decision-matrix cell is reduced to an ordered 4-tuple (a1 <= a2 <= a3 <= a4)
paired with a grey degree, a closed subinterval of [0, 1] telling how
incompletely the value is known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

REAL = "real"
INTERVAL = "interval"
LINGUISTIC = "linguistic"
UNCERTAIN = "uncertain"
KINDS = (REAL, INTERVAL, LINGUISTIC, UNCERTAIN)

_TOL = 1e-12


class GreyMixError(ValueError):
    """Base class for invalid input to the decision pipeline."""


class UnknownTermError(GreyMixError):
    def __init__(self, term):
        super().__init__(f"unknown linguistic term: {term!r}")
        self.term = term


class OrderError(GreyMixError):
    """Raised when an interval or span has its bounds reversed."""


class DegenerateError(ArithmeticError):
    """A computation has no defined result for the given data (e.g. 0/0)."""


class LinguisticScale:
    """Eleven-term ordered scale, each term a triangular fuzzy number on [0, 1]."""

    TERMS = (
        "extremely low",
        "very low",
        "low",
        "comparatively low",
        "a little low",
        "ordinary",
        "a little high",
        "comparatively high",
        "high",
        "very high",
        "extremely high",
    )
    TRIANGLES = {
        "extremely low": (0.0, 0.0, 0.1),
        "very low": (0.0, 0.1, 0.2),
        "low": (0.1, 0.2, 0.3),
        "comparatively low": (0.2, 0.3, 0.4),
        "a little low": (0.3, 0.4, 0.5),
        "ordinary": (0.4, 0.5, 0.6),
        "a little high": (0.5, 0.6, 0.7),
        "comparatively high": (0.6, 0.7, 0.8),
        "high": (0.7, 0.8, 0.9),
        "very high": (0.8, 0.9, 1.0),
        "extremely high": (0.9, 1.0, 1.0),
    }
    # Spellings found in practice for the same terms.
    ALIASES = {
        "general": "ordinary",
        "rather low": "comparatively low",
        "rather high": "comparatively high",
        "rery high": "very high",
        "rery low": "very low",
    }

    def __init__(self):
        self.terms = self.TERMS
        self.triangles = dict(self.TRIANGLES)
        self.aliases = dict(self.ALIASES)

    def canonical(self, term: str) -> str:
        key = " ".join(str(term).strip().lower().replace("_", " ").split())
        key = self.aliases.get(key, key)
        if key not in self.triangles:
            raise UnknownTermError(term)
        return key

    def index(self, term: str) -> int:
        """Position of ``term`` on the scale, -5 .. 5."""
        return self.terms.index(self.canonical(term)) - 5

    def lookup(self, term: str) -> Tuple[float, float, float]:
        return self.triangles[self.canonical(term)]


SCALE = LinguisticScale()


def scale_lookup(term: str) -> Tuple[float, float, float]:
    """Return the (low, mid, high) triangle for a linguistic term or alias."""
    return SCALE.lookup(term)


@dataclass(frozen=True)
class GeneralizedValue:
    a1: float
    a2: float
    a3: float
    a4: float
    kind: str = REAL

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GreyMixError(f"unknown value kind {self.kind!r}")
        t = self.astuple()
        if any(not math.isfinite(x) for x in t):
            raise GreyMixError(f"non-finite component in {t}")
        if not (t[0] <= t[1] <= t[2] <= t[3]):
            raise OrderError(f"components not ordered: {t}")

    def astuple(self) -> Tuple[float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4)

    def __iter__(self):
        return iter(self.astuple())

    @classmethod
    def from_components(cls, comps: Sequence[float], kind: str = REAL) -> "GeneralizedValue":
        a1, a2, a3, a4 = (float(c) for c in comps)
        return cls(a1, a2, a3, a4, kind)


@dataclass(frozen=True)
class GreyInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise GreyMixError(f"grey degree must satisfy 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")

    def astuple(self) -> Tuple[float, float]:
        return (self.lo, self.hi)


FULLY_KNOWN = GreyInterval(1.0, 1.0)


@dataclass(frozen=True)
class GreyFuzzyCell:
    value: GeneralizedValue
    grey: GreyInterval = FULLY_KNOWN


RawValue = Union[float, int, str, Sequence]


def to_generalized(raw: RawValue, kind: str | None = None) -> GeneralizedValue:
    """Embed a raw attribute value as a 4-tuple.

    A real ``r`` becomes (r, r, r, r), an interval [l, u] becomes (l, l, u, u),
    a term with triangle (L, M, U) becomes (L, M, M, U) and a span
    [lower term, upper term] becomes (L_lower, M_lower, M_upper, U_upper).
    When ``kind`` is omitted it is inferred from the Python type of ``raw``.
    """
    if kind is None:
        kind = _infer_kind(raw)
    if kind == REAL:
        r = float(raw)
        return GeneralizedValue(r, r, r, r, REAL)
    if kind == INTERVAL:
        lo, hi = (float(v) for v in _pair(raw))
        if lo > hi:
            raise OrderError(f"interval lower bound {lo} exceeds upper bound {hi}")
        return GeneralizedValue(lo, lo, hi, hi, INTERVAL)
    if kind == LINGUISTIC:
        low, mid, high = scale_lookup(raw)
        return GeneralizedValue(low, mid, mid, high, LINGUISTIC)
    if kind == UNCERTAIN:
        lower, upper = _pair(raw)
        if SCALE.index(upper) < SCALE.index(lower):
            raise OrderError(f"uncertain span [{lower!r}, {upper!r}] has its upper term below its lower term")
        aL, aM, _ = scale_lookup(lower)
        _, bM, bU = scale_lookup(upper)
        return GeneralizedValue(aL, aM, bM, bU, UNCERTAIN)
    raise GreyMixError(f"unknown value kind {kind!r}")


def _pair(raw):
    if isinstance(raw, (str, bytes)) or len(raw) != 2:
        raise GreyMixError(f"expected a 2-element pair, got {raw!r}")
    return raw[0], raw[1]


def _infer_kind(raw) -> str:
    if isinstance(raw, str):
        return LINGUISTIC
    if isinstance(raw, (int, float)):
        return REAL
    first, _ = _pair(raw)
    return UNCERTAIN if isinstance(first, str) else INTERVAL


def distance(a: GeneralizedValue, b: GeneralizedValue) -> float:
    """Euclidean distance between two 4-tuples (scaled, so tiny gaps do not underflow to 0)."""
    return math.dist(a.astuple(), b.astuple())


def grey_product(g: GreyInterval, h: GreyInterval) -> GreyInterval:
    return GreyInterval(g.lo * h.lo, g.hi * h.hi)


def clamp_grey(lo: float, hi: float) -> GreyInterval:
    lo = min(max(lo, 0.0), 1.0)
    hi = min(max(hi, 0.0), 1.0)
    return GreyInterval(lo, max(lo, hi))
