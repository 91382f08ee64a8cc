"""Weighted Borda fusion of several method rankings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from .core import GreyMixError
from .rankers import MethodScores, ranking_of

SHARED_AVERAGE = "shared-average"


@dataclass(frozen=True)
class BordaConfig:
    method_weights: Optional[Mapping[str, float]] = None
    tie_policy: str = SHARED_AVERAGE

    def __post_init__(self):
        if self.tie_policy != SHARED_AVERAGE:
            raise GreyMixError(f"unsupported tie policy {self.tie_policy!r}")
        if self.method_weights is not None:
            if any(w < 0 for w in self.method_weights.values()):
                raise GreyMixError("method weights must be nonnegative")
            if sum(self.method_weights.values()) <= 0:
                raise GreyMixError("method weights must not all be zero")

    def weights_for(self, methods: Sequence[str]) -> Dict[str, float]:
        """Normalized weight per method; equal weights when none configured."""
        if self.method_weights is None:
            return {m: 1.0 / len(methods) for m in methods}
        missing = [m for m in methods if m not in self.method_weights]
        if missing:
            raise GreyMixError(f"no Borda weight for method(s) {missing}")
        total = sum(self.method_weights[m] for m in methods)
        if total <= 0:
            raise GreyMixError("Borda weights of the ranked methods sum to zero")
        return {m: self.method_weights[m] / total for m in methods}


@dataclass(frozen=True)
class FinalRanking:
    order: Tuple[int, ...]
    borda_scores: Tuple[float, ...]
    per_method_ranks: Tuple[Tuple[float, ...], ...]
    ties: Tuple[Tuple[int, ...], ...] = field(default=())


def positional_ranks(scores: Sequence[float]) -> np.ndarray:
    """Rank 1 for the best score; tied plans share the average position."""
    return rankdata(-np.asarray(scores, dtype=float), method="average")


def weighted_borda(rankings: Sequence[MethodScores], config: BordaConfig = BordaConfig()) -> FinalRanking:
    """Each plan earns sum(weight * (n - rank)) over methods."""
    if not rankings:
        raise GreyMixError("need at least one method ranking")
    counts = {len(r.scores) for r in rankings}
    if len(counts) != 1:
        raise GreyMixError(f"method rankings cover different plan counts: {sorted(counts)}")
    n = counts.pop()
    keys = [r.method for r in rankings]
    if config.method_weights is None:
        weights = [1.0 / len(rankings)] * len(rankings)
    else:
        by_method = config.weights_for(list(dict.fromkeys(keys)))
        weights = [by_method[k] for k in keys]
        total = sum(weights)
        weights = [w / total for w in weights]

    ranks = np.array([positional_ranks(r.scores) for r in rankings])
    points = (np.asarray(weights)[:, None] * (n - ranks)).sum(axis=0)
    points = np.round(points, 12)
    order = ranking_of(points)
    groups = {}
    for i, p in enumerate(points):
        groups.setdefault(p, []).append(i)
    ties = tuple(tuple(g) for g in groups.values() if len(g) > 1)
    return FinalRanking(
        order=order,
        borda_scores=tuple(float(p) for p in points),
        per_method_ranks=tuple(tuple(float(v) for v in row) for row in ranks),
        ties=ties,
    )
