"""JSON decision documents: parsing, validation and serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Dict, List, Optional, Tuple

from .core import (
    FULLY_KNOWN,
    KINDS,
    GreyFuzzyCell,
    GreyInterval,
    GreyMixError,
    to_generalized,
)
from .normalize import NORMALIZATIONS, STRICT_PAPER, AttributeSpec, DecisionMatrix

TOP_LEVEL_FIELDS = {
    "plans", "attributes", "cells", "experts", "subjective_weights",
    "weight_grey", "preferences", "config",
}
ATTRIBUTE_FIELDS = {"name", "orientation", "declared_kind"}
CELL_FIELDS = {"type", "value", "grey"}
CONFIG_FIELDS = {
    "danger", "rho", "theta_plus", "theta_minus", "incidence_form",
    "beta_form", "weight_application", "normalization", "borda_weights",
}


class DocumentError(GreyMixError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class CellSpec:
    type: str
    value: Any
    grey: Optional[Tuple[float, float]] = None

    def to_cell(self) -> GreyFuzzyCell:
        grey = FULLY_KNOWN if self.grey is None else GreyInterval(*self.grey)
        return GreyFuzzyCell(to_generalized(self.value, self.type), grey)


@dataclass(frozen=True)
class DecisionDocument:
    plans: Tuple[str, ...]
    attributes: Tuple[AttributeSpec, ...]
    cells: Tuple[Tuple[CellSpec, ...], ...]
    experts: Optional[Tuple[Tuple[float, ...], ...]] = None
    subjective_weights: Optional[Tuple[Tuple[float, float], ...]] = None
    weight_grey: Optional[Tuple[Tuple[float, float], ...]] = None
    preferences: Optional[Tuple[Tuple[float, float, float, float], ...]] = None
    config: Dict[str, Any] = field(default_factory=dict)
    warnings: Tuple[str, ...] = ()

    def matrix(self) -> DecisionMatrix:
        return DecisionMatrix(
            self.plans,
            self.attributes,
            [[c.to_cell() for c in row] for row in self.cells],
        )


def _check_fields(obj, allowed, path, lenient, warnings):
    if not isinstance(obj, dict):
        raise DocumentError(path, f"expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        if not lenient:
            raise DocumentError(path, f"unknown field(s) {unknown}")
        warnings.append(f"ignored unknown field(s) {unknown} at {path}")


def _number(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError(path, f"expected a number, got {v!r}")
    return float(v)


def _pair_of_numbers(v, path) -> Tuple[float, float]:
    if not isinstance(v, list) or len(v) != 2:
        raise DocumentError(path, f"expected a 2-element array, got {v!r}")
    return _number(v[0], f"{path}[0]"), _number(v[1], f"{path}[1]")


def _grey(v, path) -> Tuple[float, float]:
    lo, hi = _pair_of_numbers(v, path)
    try:
        GreyInterval(lo, hi)
    except GreyMixError as exc:
        raise DocumentError(path, str(exc)) from None
    return lo, hi


def _cell(obj, path, lenient, warnings) -> CellSpec:
    _check_fields(obj, CELL_FIELDS, path, lenient, warnings)
    kind = obj.get("type")
    if kind not in KINDS:
        raise DocumentError(f"{path}.type", f"must be one of {list(KINDS)}, got {kind!r}")
    if "value" not in obj:
        raise DocumentError(path, "missing field 'value'")
    raw = obj["value"]
    if kind == "real":
        value = _number(raw, f"{path}.value")
    elif kind == "interval":
        value = _pair_of_numbers(raw, f"{path}.value")
    elif kind == "linguistic":
        if not isinstance(raw, str):
            raise DocumentError(f"{path}.value", f"expected a term, got {raw!r}")
        value = raw
    else:
        if not (isinstance(raw, list) and len(raw) == 2 and all(isinstance(t, str) for t in raw)):
            raise DocumentError(f"{path}.value", f"expected two terms, got {raw!r}")
        value = tuple(raw)
    grey = None
    if obj.get("grey") is not None:
        grey = _grey(obj["grey"], f"{path}.grey")
    spec = CellSpec(kind, value, grey)
    try:
        spec.to_cell()
    except GreyMixError as exc:
        raise DocumentError(f"{path}.value", str(exc)) from None
    return spec


def _config(obj, lenient, warnings) -> Dict[str, Any]:
    _check_fields(obj, CONFIG_FIELDS, "config", lenient, warnings)
    out = {}
    for key in ("danger", "rho", "theta_plus", "theta_minus"):
        if key in obj:
            out[key] = _number(obj[key], f"config.{key}")
    for key in ("incidence_form", "beta_form", "weight_application", "normalization"):
        if key in obj:
            if not isinstance(obj[key], str):
                raise DocumentError(f"config.{key}", f"expected a string, got {obj[key]!r}")
            out[key] = obj[key]
    if "normalization" in out and out["normalization"] not in NORMALIZATIONS:
        raise DocumentError("config.normalization", f"must be one of {list(NORMALIZATIONS)}")
    if "borda_weights" in obj:
        bw = obj["borda_weights"]
        if not isinstance(bw, dict):
            raise DocumentError("config.borda_weights", "expected an object of method -> weight")
        out["borda_weights"] = {k: _number(v, f"config.borda_weights.{k}") for k, v in bw.items()}
    return out


def document_from_dict(data: Dict[str, Any], lenient: bool = False) -> DecisionDocument:
    """Validate a decoded JSON object and build a :class:`DecisionDocument`.

    Defaults (missing grey degrees, missing weight grey parts, missing
    danger index, equal Borda weights) are applied downstream and announced
    here, one warning per application.
    """
    warnings: List[str] = []
    _check_fields(data, TOP_LEVEL_FIELDS, "$", lenient, warnings)
    for key in ("plans", "attributes", "cells"):
        if key not in data:
            raise DocumentError("$", f"missing field {key!r}")

    plans = data["plans"]
    if not isinstance(plans, list) or not all(isinstance(p, str) for p in plans):
        raise DocumentError("plans", "expected an array of labels")
    if len(plans) < 2:
        raise DocumentError("plans", "need at least two plans")
    if len(set(plans)) != len(plans):
        raise DocumentError("plans", "plan labels must be unique")

    if not isinstance(data["attributes"], list) or not data["attributes"]:
        raise DocumentError("attributes", "expected a nonempty array")
    attributes = []
    for j, a in enumerate(data["attributes"]):
        path = f"attributes[{j}]"
        _check_fields(a, ATTRIBUTE_FIELDS, path, lenient, warnings)
        try:
            attributes.append(AttributeSpec(a.get("name", ""), a.get("orientation"), a.get("declared_kind")))
        except GreyMixError as exc:
            raise DocumentError(path, str(exc)) from None
    n, m = len(plans), len(attributes)

    rows = data["cells"]
    if not isinstance(rows, list) or len(rows) != n:
        raise DocumentError("cells", f"expected {n} rows, one per plan")
    cells = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise DocumentError(f"cells[{i}]", f"expected {m} cells, one per attribute")
        cells.append(tuple(_cell(c, f"cells[{i}][{j}]", lenient, warnings) for j, c in enumerate(row)))
    for i, row in enumerate(cells):
        for j, c in enumerate(row):
            if c.grey is None:
                warnings.append(f"grey degree of cell ({plans[i]}, {attributes[j].name}) defaulted to [1, 1]")

    experts = subjective = None
    if data.get("subjective_weights") is not None:
        sw = data["subjective_weights"]
        if not isinstance(sw, list) or len(sw) != m:
            raise DocumentError("subjective_weights", f"expected {m} [lo, hi] pairs")
        subjective = tuple(_pair_of_numbers(p, f"subjective_weights[{j}]") for j, p in enumerate(sw))
        for j, (lo, hi) in enumerate(subjective):
            if not 0 <= lo <= hi:
                raise DocumentError(f"subjective_weights[{j}]", "need 0 <= lo <= hi")
    if data.get("experts") is not None:
        ex = data["experts"]
        if not isinstance(ex, list) or not ex:
            raise DocumentError("experts", "expected a nonempty array of weight vectors")
        parsed = []
        for l, vec in enumerate(ex):
            if not isinstance(vec, list) or len(vec) != m:
                raise DocumentError(f"experts[{l}]", f"expected {m} weights")
            parsed.append(tuple(_number(v, f"experts[{l}][{j}]") for j, v in enumerate(vec)))
            if any(v < 0 for v in parsed[-1]):
                raise DocumentError(f"experts[{l}]", "weights must be nonnegative")
        experts = tuple(parsed)
    if experts is None and subjective is None:
        raise DocumentError("$", "need either 'experts' or 'subjective_weights'")
    if experts is not None and subjective is not None:
        warnings.append("both experts and subjective_weights given; subjective_weights used")

    weight_grey = None
    if data.get("weight_grey") is not None:
        wg = data["weight_grey"]
        if not isinstance(wg, list) or len(wg) != m:
            raise DocumentError("weight_grey", f"expected {m} [lo, hi] pairs")
        weight_grey = tuple(_grey(p, f"weight_grey[{j}]") for j, p in enumerate(wg))
    else:
        warnings.append("grey parts of attribute weights defaulted to [1, 1]")

    preferences = None
    if data.get("preferences") is not None:
        pref = data["preferences"]
        if not isinstance(pref, list) or len(pref) != n:
            raise DocumentError("preferences", f"expected {n} 4-tuples, one per plan")
        parsed = []
        for i, q in enumerate(pref):
            if not isinstance(q, list) or len(q) != 4:
                raise DocumentError(f"preferences[{i}]", "expected a 4-element array")
            q = tuple(_number(v, f"preferences[{i}][{k}]") for k, v in enumerate(q))
            if not q[0] <= q[1] <= q[2] <= q[3]:
                raise DocumentError(f"preferences[{i}]", f"components not ordered: {q}")
            parsed.append(q)
        preferences = tuple(parsed)
    else:
        warnings.append("no preference values given; matrix used without preference blending")

    config = _config(data.get("config") or {}, lenient, warnings)
    if "danger" not in config:
        warnings.append("danger index defaulted to 0.5")
    if "borda_weights" not in config:
        warnings.append("Borda method weights defaulted to equal weights")

    return DecisionDocument(
        plans=tuple(plans),
        attributes=tuple(attributes),
        cells=tuple(cells),
        experts=experts,
        subjective_weights=subjective,
        weight_grey=weight_grey,
        preferences=preferences,
        config=config,
        warnings=tuple(warnings),
    )


def parse_document(text: str, lenient: bool = False) -> DecisionDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON: {exc}") from None
    return document_from_dict(data, lenient=lenient)


def document_to_dict(doc: DecisionDocument) -> Dict[str, Any]:
    def cell(c: CellSpec):
        out = {"type": c.type, "value": list(c.value) if isinstance(c.value, tuple) else c.value}
        if c.grey is not None:
            out["grey"] = list(c.grey)
        return out

    data: Dict[str, Any] = {
        "plans": list(doc.plans),
        "attributes": [
            {"name": a.name, "orientation": a.orientation}
            | ({"declared_kind": a.declared_kind} if a.declared_kind else {})
            for a in doc.attributes
        ],
        "cells": [[cell(c) for c in row] for row in doc.cells],
    }
    for key in ("experts", "subjective_weights", "weight_grey", "preferences"):
        value = getattr(doc, key)
        if value is not None:
            data[key] = [list(v) for v in value]
    if doc.config:
        data["config"] = dict(doc.config)
    return data


def emit_document(doc: DecisionDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2)


def paper_example_text() -> str:
    return resources.files("greymix").joinpath("data/paper_example.json").read_text(encoding="utf-8")


def paper_example() -> DecisionDocument:
    """The bundled five-plan, nine-attribute example document."""
    return parse_document(paper_example_text())
