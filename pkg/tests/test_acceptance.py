"""Acceptance checks; run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines."""
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from greymix.borda import BordaConfig, weighted_borda
from greymix.core import GeneralizedValue, distance
from greymix.document import document_from_dict, document_to_dict, paper_example
from greymix.pipeline import PAPER_ORDER, PAPER_SCORES, PipelineConfig, comparison_table, report_to_json, run_pipeline
from greymix.rankers import (
    CLASSIC_FORM,
    METHODS,
    PAPER_FORM,
    MethodScores,
    ideal_vectors,
    incidence_coefficients,
    incidence_degree,
    max_entropy_beta,
    membership_scores,
    sufficiency,
)
from greymix.weighting import objective_optimal

from oracles import deviation_loops, membership_grid, p3_grid, sphere_maximizer

TESTS = Path(__file__).parent


def verdict(number, title, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return ok


def test_1_rank_reproduction():
    doc = paper_example()
    start = time.perf_counter()
    report = run_pipeline(doc)
    elapsed = time.perf_counter() - start
    orders = {name: report.method(name).ranking for name in METHODS}
    ok = all(o == PAPER_ORDER for o in orders.values()) and report.final.order == PAPER_ORDER and elapsed < 1.0
    order = " > ".join(report.plans[i] for i in report.final.order)
    assert verdict(1, "rank reproduction", ok, f"{order}, {elapsed * 1000:.1f} ms")


def test_2_score_proximity():
    report = run_pipeline(paper_example())
    print()
    print(comparison_table(report))
    orders_ok = all(
        report.method(name).ranking == MethodScores(name, np.asarray(PAPER_SCORES[name])).ranking for name in METHODS
    )
    worst = max(
        float(np.max(np.abs(np.asarray(report.method(name).scores) - PAPER_SCORES[name]))) for name in METHODS
    )
    assert verdict(2, "score rank orders match published orders", orders_ok, f"max abs score gap {worst:.4f}")


def test_3_optimal_weights_oracle():
    rng = np.random.default_rng(2024)
    worst = 1.0
    for _ in range(20):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        x = np.sort(rng.uniform(0.0, 1.0, size=(n, m, 4)), axis=-1)
        got = objective_optimal(x)
        ref = sphere_maximizer(deviation_loops(x), m, step=1e-3)
        cos = float(got @ ref / (np.linalg.norm(got) * np.linalg.norm(ref)))
        worst = min(worst, cos)
    assert verdict(3, "maximum-deviation weights vs sphere brute force", worst >= 0.9999, f"min cosine {worst:.7f}")


def test_4_membership_oracle():
    rng = np.random.default_rng(2025)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 8))
        gp, gm = rng.uniform(0.01, 1, size=n), rng.uniform(0.01, 1, size=n)
        gap = np.abs(np.asarray(membership_scores(gp, gm).scores) - membership_grid(gp, gm, 1e-4))
        worst = max(worst, float(gap.max()))
    assert verdict(4, "membership closed form vs grid argmin", worst <= 2e-4, f"max gap {worst:.2e}")


def test_5_entropy_beta_oracle():
    rng = np.random.default_rng(2026)
    worst, exact = 0.0, True
    for _ in range(20):
        n = int(rng.integers(2, 8))
        gp, gm = rng.uniform(size=n), rng.uniform(size=n)
        b1, b2 = max_entropy_beta(gp, gm)
        g1, g2 = p3_grid(gp, gm, 1e-4)
        worst = max(worst, abs(b1 - g1), abs(b2 - g2))
        exact &= b1 + b2 == 1.0
    ok = worst <= 1e-3 and exact
    assert verdict(5, "entropy-weighted incidence coefficients vs grid maximizer", ok, f"max gap {worst:.2e}, sums exact={exact}")


def _property_spot_checks():
    rng = np.random.default_rng(2027)
    failures = []
    for _ in range(1000):
        a, b, c = (GeneralizedValue.from_components(np.sort(rng.normal(size=4))) for _ in range(3))
        if not (distance(a, b) == distance(b, a) > 0 and distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12):
            failures.append("metric")
            break
    for form in (PAPER_FORM, CLASSIC_FORM):
        y = np.sort(rng.uniform(size=(5, 3, 4)), axis=-1)
        for p in incidence_coefficients(y, ideal_vectors(y), 0.5, form):
            g = incidence_degree(p)
            if not (np.all(g > 0) and np.all(g <= 1)):
                failures.append(f"incidence range {form}")
        ones = incidence_degree(np.ones((3, 4)))
        if not np.all(ones == 1):
            failures.append("incidence normality")
    alphas = np.linspace(0, 1, 11)
    if np.any(np.diff([sufficiency((0.2, 0.6), a) for a in alphas]) > 0):
        failures.append("danger monotonicity")
    scores = rng.uniform(size=6)
    if weighted_borda([MethodScores(f"m{i}", scores) for i in range(4)]).order != MethodScores("x", scores).ranking:
        failures.append("borda unanimity")
    doc = paper_example()
    data = document_to_dict(doc)
    perm = [4, 2, 0, 3, 1]
    for key in ("plans", "cells", "preferences"):
        data[key] = [data[key][p] for p in perm]
    base, other = run_pipeline(doc), run_pipeline(document_from_dict(data))
    for name in METHODS:
        if not np.allclose(np.asarray(base.method(name).scores)[perm], other.method(name).scores, rtol=1e-12):
            failures.append(f"relabeling {name}")
    return failures


def test_6_property_suites():
    failures = _property_spot_checks()
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(TESTS), "--ignore", str(TESTS / "test_acceptance.py")],
        capture_output=True,
        text=True,
        cwd=TESTS.parent,
    )
    elapsed = time.perf_counter() - start
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = not failures and proc.returncode == 0 and elapsed < 30.0
    detail = f"suite: {summary}; {elapsed:.1f} s" + (f"; spot-check failures {failures}" if failures else "")
    assert verdict(6, "property suites", ok, detail)


def test_7_determinism():
    docs = [paper_example()]
    cfg_classic = PipelineConfig.from_document(docs[0], incidence_form="classic", danger=0.2)
    first = [report_to_json(run_pipeline(docs[0])), report_to_json(run_pipeline(docs[0], cfg_classic))]
    second = [report_to_json(run_pipeline(paper_example())), report_to_json(run_pipeline(paper_example(), cfg_classic))]
    assert verdict(7, "determinism", first == second, "byte-identical JSON across two runs")
