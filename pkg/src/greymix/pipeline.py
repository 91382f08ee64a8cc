"""End-to-end ranking: normalize, weight, score by four methods, fuse."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from . import rankers as rk
from .borda import BordaConfig, FinalRanking, weighted_borda
from .core import DegenerateError, GreyMixError
from .document import DecisionDocument
from .normalize import STRICT_PAPER, normalize_matrix
from .weighting import (
    EntropyDegenerateError,
    GreyWeightVector,
    aggregate_subjective,
    comprehensive_objective,
    final_weights,
    normalize_grey_fuzzy_weights,
    objective_entropy,
    objective_optimal,
)

# Scores printed for the bundled example, in plan order A1..A5.
PAPER_SCORES = {
    rk.TOPSIS: (0.5718, 0.8550, 0.4805, 0.2247, 0.5841),
    rk.INCIDENCE_APPROACH: (0.4869, 0.5534, 0.4760, 0.4501, 0.5231),
    rk.MEMBERSHIP: (0.4737, 0.6055, 0.4521, 0.4012, 0.5461),
    rk.MAX_ENTROPY: (0.8083, 0.9327, 0.7969, 0.7821, 0.8729),
}
PAPER_ORDER = (1, 4, 0, 2, 3)


class PipelineError(Exception):
    """A module error annotated with the pipeline stage that raised it."""

    def __init__(self, stage: str, original: Exception):
        super().__init__(f"{stage}: {original}")
        self.stage = stage
        self.original = original

    @property
    def degenerate(self) -> bool:
        return isinstance(self.original, DegenerateError)


@dataclass(frozen=True)
class PipelineConfig:
    ranker: rk.RankerConfig = rk.RankerConfig()
    borda: BordaConfig = BordaConfig()
    normalization: str = STRICT_PAPER

    @classmethod
    def from_document(cls, doc: DecisionDocument, **overrides) -> "PipelineConfig":
        """Document config with non-None keyword ``overrides`` applied on top."""
        cfg = dict(doc.config)
        cfg.update({k: v for k, v in overrides.items() if v is not None})
        ranker_keys = {f.name for f in fields(rk.RankerConfig)}
        try:
            ranker = rk.RankerConfig(**{k: v for k, v in cfg.items() if k in ranker_keys})
            borda = BordaConfig(cfg.get("borda_weights"))
        except GreyMixError as exc:
            raise PipelineError("config", exc) from exc
        return cls(ranker, borda, cfg.get("normalization", STRICT_PAPER))

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self.ranker)
        out["normalization"] = self.normalization
        weights = self.borda.method_weights
        out["borda_weights"] = None if weights is None else dict(weights)
        return out


def _tuples(a) -> Any:
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        return tuple(float(v) for v in a)
    return tuple(_tuples(row) for row in a)


def _lists(t):
    return [_lists(v) for v in t] if isinstance(t, (tuple, list)) else t


def _frozen(t):
    return tuple(_frozen(v) for v in t) if isinstance(t, (tuple, list)) else t


@dataclass(frozen=True)
class Report:
    plans: Tuple[str, ...]
    attributes: Tuple[str, ...]
    config: Tuple[Tuple[str, Any], ...]
    normalized: Tuple  # (n, m, 4)
    normalized_grey: Tuple  # (n, m, 2)
    subjective_weights: Tuple  # (m, 2)
    objective_optimal: Tuple  # (m,)
    objective_entropy: Tuple  # (4, m)
    objective_weights: Tuple  # (m, 2)
    final_weights: Tuple  # (m, 2)
    grey_fuzzy_weights: Tuple  # (m, 4): w_lo, w_hi, s_lo, s_hi
    weighted: Tuple  # (n, m, 4) matrix Y
    incidence_plus: Tuple  # (n,)
    incidence_minus: Tuple  # (n,)
    entropy_beta: Tuple[float, float]
    methods: Tuple[rk.MethodScores, ...]
    final: FinalRanking
    warnings: Tuple[str, ...]

    def method(self, name: str) -> rk.MethodScores:
        for m in self.methods:
            if m.method == name:
                return m
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "config":
                out[f.name] = dict(value)
            elif f.name == "methods":
                out[f.name] = [
                    {"method": m.method, "scores": list(m.scores), "ranking": list(m.ranking)} for m in value
                ]
            elif f.name == "final":
                out[f.name] = {
                    "order": list(value.order),
                    "borda_scores": list(value.borda_scores),
                    "per_method_ranks": _lists(value.per_method_ranks),
                    "ties": _lists(value.ties),
                }
            else:
                out[f.name] = _lists(value)
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        kwargs = {}
        for f in fields(cls):
            value = data[f.name]
            if f.name == "config":
                kwargs[f.name] = tuple((k, _frozen(v) if isinstance(v, list) else v) for k, v in value.items())
            elif f.name == "methods":
                kwargs[f.name] = tuple(rk.MethodScores(m["method"], m["scores"], m["ranking"]) for m in value)
            elif f.name == "final":
                kwargs[f.name] = FinalRanking(
                    order=tuple(value["order"]),
                    borda_scores=tuple(value["borda_scores"]),
                    per_method_ranks=_frozen(value["per_method_ranks"]),
                    ties=_frozen(value["ties"]),
                )
            else:
                kwargs[f.name] = _frozen(value)
        return cls(**kwargs)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (GreyMixError, DegenerateError) as exc:
        raise PipelineError(name, exc) from exc


def run_pipeline(doc: DecisionDocument, config: Optional[PipelineConfig] = None) -> Report:
    """Rank the plans of ``doc``; every intermediate result lands in the report."""
    if config is None:
        config = PipelineConfig.from_document(doc)
    rc = config.ranker
    warnings: List[str] = list(doc.warnings)

    matrix = _stage("parse", doc.matrix)
    normalized = _stage("normalize", normalize_matrix, matrix, config.normalization)
    x = normalized.values()
    mu = normalized.greys()
    m = x.shape[1]

    if doc.subjective_weights is not None:
        alpha = GreyWeightVector.from_pairs(doc.subjective_weights, "subjective")
    else:
        alpha = _stage("subjective weights", aggregate_subjective, doc.experts)

    optimal = _stage("objective weights", objective_optimal, x)
    entropy = []
    for k in range(1, 5):
        try:
            entropy.append(objective_entropy(x, k))
        except EntropyDegenerateError:
            warnings.append(f"entropy weights of component {k} degenerate (all columns uniform); uniform weights used")
            entropy.append(np.full(m, 1.0 / m))
    beta = _stage("objective weights", comprehensive_objective, optimal, *entropy)
    final = _stage("final weights", final_weights, alpha, beta)
    gfw = _stage("grey-fuzzy weights", normalize_grey_fuzzy_weights, final, doc.weight_grey)

    if doc.preferences is not None:
        z = _stage("preference", rk.blend_preference, x, np.asarray(doc.preferences))
    else:
        z = x
    y_tilde, t = _stage("weighting", rk.weight_and_grey, z, mu, gfw, rc.weight_application)
    y = rk.apply_sufficiency(y_tilde, t, rc.danger)

    ideal = rk.ideal_vectors(y)
    topsis = _stage("topsis", rk.topsis_scores, y, ideal)
    p_plus, p_minus = _stage("incidence", rk.incidence_coefficients, y, ideal, rc.rho, rc.incidence_form)
    g_plus, g_minus = rk.incidence_degree(p_plus), rk.incidence_degree(p_minus)
    approach = _stage(
        "incidence approach", rk.incidence_relative_approach, g_plus, g_minus, rc.theta_plus, rc.theta_minus
    )
    membership = rk.membership_scores(g_plus, g_minus)
    b1, b2 = _stage("max entropy", rk.max_entropy_beta, g_plus, g_minus, rc.beta_form)
    comprehensive = _stage("max entropy", rk.comprehensive_incidence, g_plus, g_minus, b1, b2)
    methods = (topsis, approach, membership, comprehensive)

    fused = _stage("borda", weighted_borda, methods, config.borda)
    for ms in methods:
        for group in ms.ties():
            warnings.append(f"tie in {ms.method} between plans {[doc.plans[i] for i in group]}")
    for group in fused.ties:
        warnings.append(f"tie in final Borda ranking between plans {[doc.plans[i] for i in group]}")

    return Report(
        plans=doc.plans,
        attributes=tuple(a.name for a in doc.attributes),
        config=tuple((k, _frozen(v) if isinstance(v, list) else v) for k, v in config.to_dict().items()),
        normalized=_tuples(x),
        normalized_grey=_tuples(mu),
        subjective_weights=_tuples(np.stack([alpha.lo, alpha.hi], axis=1)),
        objective_optimal=_tuples(optimal),
        objective_entropy=_tuples(np.asarray(entropy)),
        objective_weights=_tuples(np.stack([beta.lo, beta.hi], axis=1)),
        final_weights=_tuples(np.stack([final.lo, final.hi], axis=1)),
        grey_fuzzy_weights=_tuples(np.stack([gfw.w_lo, gfw.w_hi, gfw.s_lo, gfw.s_hi], axis=1)),
        weighted=_tuples(y),
        incidence_plus=_tuples(g_plus),
        incidence_minus=_tuples(g_minus),
        entropy_beta=(float(b1), float(b2)),
        methods=methods,
        final=fused,
        warnings=tuple(warnings),
    )


def report_to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=True) + "\n"


def report_from_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


_COLUMNS = (
    (rk.TOPSIS, "TOPSIS C"),
    (rk.INCIDENCE_APPROACH, "C'"),
    (rk.MEMBERSHIP, "u"),
    (rk.MAX_ENTROPY, "C''"),
)


def _ascii_table(header, rows) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    def line(cells):
        return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths))
    sep = "  ".join("-" * w for w in widths)
    return "\n".join([line(header), sep] + [line(r) for r in rows])


def report_to_table(report: Report) -> str:
    header = ["rank", "plan"] + [label for _, label in _COLUMNS] + ["Borda"]
    rows = []
    for pos, i in enumerate(report.final.order, start=1):
        rows.append(
            [pos, report.plans[i]]
            + [f"{report.method(key).scores[i]:.4f}" for key, _ in _COLUMNS]
            + [f"{report.final.borda_scores[i]:.4f}"]
        )
    parts = [_ascii_table(header, rows)]
    order = " > ".join(report.plans[i] for i in report.final.order)
    parts.append(f"\nfinal order: {order}")
    if report.warnings:
        parts.append("\nwarnings:")
        parts.extend(f"  - {w}" for w in report.warnings)
    return "\n".join(parts) + "\n"


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "table":
        return report_to_table(report)
    raise ValueError(f"unknown report format {fmt!r}")


def comparison_table(report: Report) -> str:
    """Computed scores beside the values printed for the bundled example."""
    blocks = []
    for key, label in _COLUMNS:
        ms = report.method(key)
        paper = PAPER_SCORES[key]
        rows = [
            [report.plans[i], f"{ms.scores[i]:.4f}", f"{paper[i]:.4f}", f"{ms.scores[i] - paper[i]:+.4f}"]
            for i in range(len(report.plans))
        ]
        order_ok = ms.ranking == PAPER_ORDER
        blocks.append(
            f"{label} ({key}) - rank order {'matches' if order_ok else 'DIFFERS'}\n"
            + _ascii_table(["plan", "computed", "published", "diff"], rows)
        )
    final_ok = report.final.order == PAPER_ORDER
    blocks.append(
        "final Borda order: "
        + " > ".join(report.plans[i] for i in report.final.order)
        + f" ({'matches' if final_ok else 'DIFFERS from'} published A2 > A5 > A1 > A3 > A4)"
    )
    return "\n\n".join(blocks) + "\n"
