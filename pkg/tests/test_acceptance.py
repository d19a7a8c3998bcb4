"""Acceptance criteria at desk scale, one printed PASS/FAIL line per criterion."""

from __future__ import annotations

import time

from cyclohecke import central, fusion, traces
from cyclohecke.central import GammaFunctional
from cyclohecke.fusion import degenerate_gamma, nondegeneracy_check
from cyclohecke.scalars import LaurentPoly, ScalarValue, v_var
from cyclohecke.verify import suite_flatness, suite_group, suite_induced, suite_relations

SIZES = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]
FUSION_SIZES = [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]

# collected for the terminal summary, so the lines show up even with output capture
LINES: list[str] = []


def _failures(rows) -> list[str]:
    return [name for name, ok in rows if not ok]


def _report(number: int, title: str, failures: list[str], seconds: float, budget: float | None = None) -> None:
    over = budget is not None and seconds > budget
    status = "PASS" if not failures and not over else "FAIL"
    detail = f"{seconds:.1f}s" + (f" (budget {budget:.0f}s)" if budget else "")
    line = f"ACCEPTANCE {number} [{status}] {title} - {detail}"
    LINES.append(line)
    LINES.extend(f"    failed: {f}" for f in failures)
    print("\n" + line)
    for f in failures:
        print(f"    failed: {f}")
    assert not failures, failures
    assert not over, f"runtime {seconds:.1f}s over budget {budget}s"


def _rows(report) -> list[tuple[str, bool]]:
    return [(f"H({report.m},1,{report.n}) {c.identity}", c.ok) for c in report.checks]


def test_1_flat_basis():
    t = time.perf_counter()
    bad = []
    for m, n in SIZES:
        bad += _failures(_rows(suite_flatness(m, n)))
    _report(1, "flat basis: closure under generator pairs and m^n n! words", bad, time.perf_counter() - t, 120)


def test_2_defining_relations():
    t = time.perf_counter()
    bad = []
    for m, n in SIZES:
        bad += _failures(_rows(suite_relations(m, n)))
    _report(2, "defining relations and commutation identities", bad, time.perf_counter() - t)


def test_3_induced_representations():
    t = time.perf_counter()
    bad = []
    for m, n in [(1, 3), (2, 2), (2, 3)]:
        bad += _failures(_rows(suite_induced(m, n)))
    _report(3, "induced regular and Burau-type modules", bad, time.perf_counter() - t, 180)


def test_4_relative_traces():
    t = time.perf_counter()
    bad = []
    for m, k in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        bad += _failures(traces.verify_trace_axioms(m, k, traces.TraceParams.generic(m)))
    for m in (1, 2, 3):
        p = traces.TraceParams.generic(m)
        if not all(traces.lemma_tatb(m, a, b, p) for a in range(m) for b in range(m)):
            bad.append(f"Tr_1 Tr_2(s1^-1 t^a s1 t^b s1) at m={m}")
    bad += _failures(traces.markov_properties(2, 3, traces.TraceParams.generic(2)))
    _report(4, "relative trace axioms, t^a t^b lemma, Markov properties", bad, time.perf_counter() - t)


def test_5_central_forms():
    t = time.perf_counter()
    bad = []
    for m, n in [(1, 3), (2, 2), (2, 3)]:
        bad += _failures(central.verify_centrality(m, n, GammaFunctional.symbolic(m)))
    g = GammaFunctional.symbolic(2)
    bad += _failures(central.check_bplus_multiplicativity(2, 2, g))
    bad += _failures(central.check_quasi_symmetry(2, 2, g))
    _report(5, "centrality, varpi-invariance, B+ multiplicativity, quasi-symmetry", bad, time.perf_counter() - t)


def test_6_fusion():
    t = time.perf_counter()
    bad = []
    for m, n in FUSION_SIZES:
        bad += [f"H({m},1,{n}) {name}" for name in _failures(fusion.verify_fusion(m, n))]
    _report(6, "fusion idempotents, orthogonality, weights, Schur elements", bad, time.perf_counter() - t, 300)


def test_7_sum_rule():
    t = time.perf_counter()
    bad = []
    for m, n in FUSION_SIZES:
        bad += [f"H({m},1,{n}) {name}" for name in _failures(fusion.check_sum_rule(m, n, GammaFunctional.symbolic(m)))]
    _report(7, "sum of w_lambda times #SYT equals gamma_0^n", bad, time.perf_counter() - t)


def test_8_group_layer():
    t = time.perf_counter()
    bad = []
    for m in (1, 2, 3):
        for n in (1, 2, 3, 4):
            samples = 200 if (m, n) == (2, 3) else 0
            bad += _failures(_rows(suite_group(m, n, samples=samples, seed=0)))
    _report(8, "normal forms, coset transversals, specialisation homomorphism", bad, time.perf_counter() - t)


def test_9_nondegeneracy():
    t = time.perf_counter()
    bad = []
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        if nondegeneracy_check(GammaFunctional.circ(m), m, n).degenerate:
            bad.append(f"gamma-circ reported degenerate at H({m},1,{n})")
        for p in range(1, m + 1):
            for i in range(n):
                for sign in (1, -1) if i else (1,):
                    d = nondegeneracy_check(degenerate_gamma(m, p, i, sign), m, n)
                    c = ScalarValue.coerce(v_var(p) * LaurentPoly.var("q") ** (2 * sign * i))
                    if not (d.degenerate and d.witness == c):
                        bad.append(f"H({m},1,{n}): witness for c = v{p} q^({2 * sign * i}) is {d.to_json()}")
    _report(9, "non-degeneracy criterion: gamma-circ passes, solved gamma fails at its witness", bad, time.perf_counter() - t)
