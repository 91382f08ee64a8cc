"""Column-wise normalization of a super-mixed decision matrix."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    INTERVAL,
    KINDS,
    LINGUISTIC,
    REAL,
    GeneralizedValue,
    GreyFuzzyCell,
    GreyMixError,
)

COST = "cost"
EFFECT = "effect"
STRICT_PAPER = "strict-paper"
SYMMETRIC = "symmetric"
NORMALIZATIONS = (STRICT_PAPER, SYMMETRIC)


class NormalizationError(GreyMixError):
    def __init__(self, message, row=None, column=None):
        self.reason = message
        where = []
        if row is not None:
            where.append(f"plan {row}")
        if column is not None:
            where.append(f"attribute {column}")
        if where:
            message = f"{message} (at {', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    orientation: str
    declared_kind: Optional[str] = None

    def __post_init__(self):
        if not self.name:
            raise GreyMixError("attribute name must be nonempty")
        if self.orientation not in (COST, EFFECT):
            raise GreyMixError(f"orientation must be 'cost' or 'effect', got {self.orientation!r}")
        if self.declared_kind not in (None, "mixed") + KINDS:
            raise GreyMixError(f"unknown declared kind {self.declared_kind!r}")


@dataclass(frozen=True)
class DecisionMatrix:
    plans: Tuple[str, ...]
    attributes: Tuple[AttributeSpec, ...]
    cells: Tuple[Tuple[GreyFuzzyCell, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "plans", tuple(self.plans))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "cells", tuple(tuple(row) for row in self.cells))
        if len(self.plans) < 2 or len(self.attributes) < 1:
            raise GreyMixError("decision matrix needs at least two plans and one attribute")
        if len(self.cells) != len(self.plans):
            raise GreyMixError(f"{len(self.cells)} rows of cells for {len(self.plans)} plans")
        for i, row in enumerate(self.cells):
            if len(row) != len(self.attributes):
                raise GreyMixError(f"row {i} has {len(row)} cells for {len(self.attributes)} attributes")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.plans), len(self.attributes)

    def column(self, j: int) -> List[GreyFuzzyCell]:
        return [row[j] for row in self.cells]

    def values(self) -> np.ndarray:
        """Components as an (n, m, 4) array."""
        return np.array([[c.value.astuple() for c in row] for row in self.cells], dtype=float)

    def greys(self) -> np.ndarray:
        """Grey degrees as an (n, m, 2) array."""
        return np.array([[c.grey.astuple() for c in row] for row in self.cells], dtype=float)


def _is_numeric(v: GeneralizedValue) -> bool:
    return v.kind in (REAL, INTERVAL)


def _star_components(c, numeric: bool) -> Tuple[float, float]:
    # Reals and intervals have no peak; their midpoint stands in when a
    # linguistic cell in the same column needs the a*, a** sums.
    if numeric:
        mid = 0.5 * (c[1] + c[2])
        return mid, mid
    return c[1], c[2]


def _to_benefit(v: GeneralizedValue) -> Tuple[float, ...]:
    if _is_numeric(v):
        return (1.0 / v.a4, 1.0 / v.a4, 1.0 / v.a1, 1.0 / v.a1)
    return (1.0 - v.a4, 1.0 - v.a3, 1.0 - v.a2, 1.0 - v.a1)


def normalize_column(
    column: Sequence[GeneralizedValue],
    orientation: str,
    mode: str = STRICT_PAPER,
) -> List[GeneralizedValue]:
    """Normalize one attribute column.

    Reals and intervals use the interval sum formulas (lower bound over the
    column sum of upper bounds and vice versa).  Linguistic cells use the
    three-point formulas, uncertain spans the four-point ones.  For cost
    columns numeric cells are replaced by their reciprocals and linguistic
    cells by their complement in [0, 1] before the effect-type formulas run.
    With ``mode="strict-paper"`` both bounds of a cost interval share the sum
    of reciprocal upper bounds; ``"symmetric"`` mirrors the effect formula.
    """
    column = list(column)
    if not column:
        raise NormalizationError("cannot normalize an empty column")
    if orientation not in (COST, EFFECT):
        raise NormalizationError(f"orientation must be 'cost' or 'effect', got {orientation!r}")
    if mode not in NORMALIZATIONS:
        raise NormalizationError(f"normalization mode must be one of {NORMALIZATIONS}, got {mode!r}")

    if orientation == COST:
        for i, v in enumerate(column):
            if _is_numeric(v) and v.a1 <= 0:
                raise NormalizationError(f"cost attribute needs strictly positive values, got {v.a1}", row=i)
        comps = np.array([_to_benefit(v) for v in column])
    else:
        comps = np.array([v.astuple() for v in column])
    stars = np.array([_star_components(c, _is_numeric(v)) for c, v in zip(comps, column)])

    sum_lo = comps[:, 0].sum()
    sum_hi = comps[:, 3].sum()
    sum_star = stars[:, 0].sum()
    sum_star2 = stars[:, 1].sum()
    lo_denominator = sum_lo if (orientation == COST and mode == STRICT_PAPER) else sum_hi

    out = []
    for i, v in enumerate(column):
        c = comps[i]
        if _is_numeric(v):
            _check_positive(i, lo_denominator, sum_lo)
            lo, hi = c[0] / lo_denominator, c[3] / sum_lo
            x = (lo, lo, hi, hi)
        elif v.kind == LINGUISTIC:
            _check_positive(i, sum_star)
            x = (c[0] / sum_star, c[1] / sum_star, c[1] / sum_star, c[3] / sum_star)
        else:
            _check_positive(i, sum_star, sum_star2)
            x = (c[0] / sum_star, c[1] / sum_star, c[2] / sum_star2, c[3] / sum_star2)
        out.append(GeneralizedValue.from_components(sorted(x), v.kind))
    return out


def _check_positive(row, *sums):
    for s in sums:
        if not s > 0:
            raise NormalizationError(f"column sum {s} is not positive; normalization undefined", row=row)


def normalize_matrix(matrix: DecisionMatrix, mode: str = STRICT_PAPER) -> DecisionMatrix:
    """Normalize every column; grey degrees are copied unchanged."""
    n, m = matrix.shape
    columns = []
    for j, attr in enumerate(matrix.attributes):
        try:
            columns.append(normalize_column([c.value for c in matrix.column(j)], attr.orientation, mode))
        except NormalizationError as exc:
            raise NormalizationError(exc.reason, row=exc.row, column=attr.name) from exc
    cells = [
        [GreyFuzzyCell(columns[j][i], matrix.cells[i][j].grey) for j in range(m)]
        for i in range(n)
    ]
    return DecisionMatrix(matrix.plans, matrix.attributes, cells)
