"""Verification suites over one signature, assembled into deterministic reports."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from . import central, fusion, group, hecke, induced, traces
from .central import GammaFunctional
from .group import GroupSignature
from .hecke import AlgebraSignature, HElement
from .scalars import LaurentPoly

SUITES = ("relations", "flatness", "group", "induced", "traces", "central", "fusion")


@dataclass(frozen=True)
class Check:
    identity: str
    anchor: str
    ok: bool

    def to_json(self) -> dict:
        return {"identity": self.identity, "anchor": self.anchor, "ok": self.ok}


@dataclass
class SuiteReport:
    suite: str
    m: int | None
    n: int
    checks: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, anchor: str, rows) -> None:
        self.checks.extend(Check(name, anchor, bool(ok)) for name, ok in rows)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "signature": {"m": "inf" if self.m is None else self.m, "n": self.n},
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.skipped:
            out["skipped"] = self.skipped
        out.update(self.extra)
        return out


def desk_size(m: int | None, n: int) -> int | None:
    """m^n n!, or None for the affine algebra."""
    return None if m is None else m**n * factorial(n)


# ---------------------------------------------------------------------------
# individual suites


def _letters(n: int) -> list[hecke.Letter]:
    return [(0, 1), (0, -1)] + [(i, e) for i in range(1, n) for e in (1, -1)]


def check_closure(sig: AlgebraSignature) -> bool:
    """Products of all generator pairs with all basis words land in B with unit denominators."""
    words = hecke.basis_enumerate(sig) if sig.finite else hecke.basis_enumerate_bounded(sig, 1)
    letters = _letters(sig.n)
    for w in words:
        x = HElement.basis(sig, w)
        for g2 in letters:
            y = hecke.left_mul_generator(g2, x)
            for g1 in letters:
                z = hecke.left_mul_generator(g1, y)
                for w2 in z.terms:
                    try:
                        sig.check_word(w2)
                    except ValueError:
                        return False
                if not z.has_unit_denominators():
                    return False
    return True


def suite_relations(m: int | None, n: int, **_) -> SuiteReport:
    sig = AlgebraSignature(m, n)
    rep = SuiteReport("relations", m, n)
    rep.add("defining relations of H(m,1,n)", hecke.check_relations(sig))
    rep.add("tau/sigma commutation identities", hecke.check_identities(sig))
    return rep


def suite_flatness(m: int | None, n: int, **_) -> SuiteReport:
    sig = AlgebraSignature(m, n)
    rep = SuiteReport("flatness", m, n)
    rows = [("generator pairs times basis words stay in B", check_closure(sig))]
    if sig.finite:
        words = hecke.basis_enumerate(sig)
        rows.append((f"basis has m^n n! = {sig.dimension()} words", len(set(words)) == len(words) == sig.dimension()))
        rows.append(("every basis word is its own normal form", hecke.check_flatness(sig)))
    rep.add("flatness and the basis B", rows)
    return rep


def suite_group(m: int | None, n: int, *, seed: int = 0, samples: int = 200, **_) -> SuiteReport:
    rep = SuiteReport("group", m, n)
    if m is None:
        gsig = GroupSignature(None, n)
        table = group.coxeter_todd(gsig)
        ok = all(
            group.normal_form(group.word_to_element(w, gsig)).layers[0] == lab
            for lab, w in zip(table.vertices, table.transversal)
        )
        rep.add("coset enumeration", [("lazy coset labels match transversal words", ok)])
        rep.skipped.append("normal-form bijection and specialisation need finite m")
        return rep
    gsig = GroupSignature(m, n)
    elements = list(group.all_elements(gsig))
    forms = [group.normal_form(g) for g in elements]
    rows = [
        ("normal form is injective", len(set(forms)) == len(elements) == m**n * factorial(n)),
        ("normal form evaluates back to the element", all(group.normal_form_to_element(f) == g for f, g in zip(forms, elements))),
        (
            "reduced word evaluates back to the element",
            all(group.word_to_element(group.reduced_word(f), gsig) == g for f, g in zip(forms, elements)),
        ),
        ("reduced words are positive", all(e == 1 for f in forms for _, e in group.reduced_word(f))),
    ]
    rep.add("normal form for G(m,1,n)", rows)
    table = group.coxeter_todd(gsig)
    rows = [(f"coset table has m n = {m * n} vertices", len(table.vertices) == m * n)]
    ok = True
    reps = [group.word_to_element(w, gsig) for w in table.transversal]
    letters = [(0, 1), (0, -1)] + [(i, 1) for i in range(1, n)]
    names = ["t", "t^-1"] + [f"s{i}" for i in range(1, n)]
    for letter, name in zip(letters, names):
        x = group.GroupElement.generator(m, n, letter)
        for c, r in enumerate(reps):
            target = table.actions[name][c]
            if group.normal_form(x * r).layers[0] != table.vertices[target]:
                ok = False
    rows.append(("coset actions agree with left multiplication", ok))
    rows.append(
        ("transversal words reproduce their vertices", all(table.act_word(w, 0) == c for c, w in enumerate(table.transversal)))
    )
    rep.add("coset enumeration", rows)
    if n >= 1 and samples:
        rows = []
        sig = AlgebraSignature(m, n)
        words = hecke.basis_enumerate(sig)
        rng = random.Random(seed)
        for sign in (1, -1):
            ok = True
            for _ in range(samples):
                x = HElement.basis(sig, rng.choice(words))
                y = HElement.basis(sig, rng.choice(words))
                lhs = hecke.specialize_to_group(hecke.multiply(x, y), sign)
                rhs = hecke.group_algebra_mul(hecke.specialize_to_group(x, sign), hecke.specialize_to_group(y, sign))
                if lhs.keys() != rhs.keys() or any(not (lhs[g] - rhs[g]).is_zero() for g in lhs):
                    ok = False
                    break
            rows.append((f"specialisation q -> {sign:+d} is multiplicative ({samples} pairs)", ok))
        rep.add("specialisation to the group algebra", rows)
    return rep


def suite_induced(m: int | None, n: int, **_) -> SuiteReport:
    rep = SuiteReport("induced", m, n)
    if m is None:
        rep.skipped.append("induced modules need finite m")
        return rep
    sig = AlgebraSignature(m, n)
    reg = induced.regular_rep(sig)
    rep.add("regular representation by induction", [(f"regular: {name}", ok) for name, ok in induced.check_relations(reg)])
    letters = [(0, 1)] + [(i, 1) for i in range(1, n)]
    ok = all(reg.letter_matrix(l) == induced.left_multiplication_matrix(sig, l) for l in letters) if n else True
    rep.add("regular representation by induction", [("induced matrices equal left multiplication in B", ok)])
    if n >= 1:
        for e in range(1, m + 1):
            b = induced.burau(sig, e)
            rep.add("Burau-type modules", [(f"burau e={e}: {name}", ok) for name, ok in induced.check_relations(b)])
    return rep


def suite_traces(m: int | None, n: int, *, samples: int = 40, seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("traces", m, n)
    params = traces.TraceParams.generic(m)
    rep.add("relative trace axioms and Markov properties", traces.verify_trace_axioms(m, n, params, samples=samples, seed=seed))
    for k in range(1, n + 1):
        rep.add("conditional expectation", traces.conditional_expectation_check(m, k, params))
    return rep


def suite_central(m: int | None, n: int, **_) -> SuiteReport:
    rep = SuiteReport("central", m, n)
    g = GammaFunctional.symbolic(m)
    rep.add("centrality of L^gamma", central.verify_centrality(m, n, g))
    if n >= 2 and m != 1:
        # for m = 1 a level functional is a scalar multiple, which stays central
        other = GammaFunctional(m, {a: LaurentPoly.var(f"x{a + 9}") for a in (range(m) if m else range(-1, 2))})
        broken = central.verify_centrality(m, n, g, levels=[other] + [g] * (n - 1))[0][1]
        rep.add("per-level ansatz (negative control)", [("independent level functionals break centrality", not broken)])
    if m is None:
        rep.skipped.append("B+, B^gamma, Markov identification and specialisation need finite m")
        return rep
    rep.add("quasi-symmetric basis B^gamma", central.check_quasi_symmetry(m, n, g))
    rep.add("multiplicativity on B+", central.check_bplus_multiplicativity(m, n, g))
    rep.add("Markov identification", central.check_markov_identification(m, n, GammaFunctional(m, {0: 1})))
    rep.add("symmetrising form of the group algebra", central.check_group_specialization(m, n))
    return rep


def suite_fusion(m: int | None, n: int, **_) -> SuiteReport:
    rep = SuiteReport("fusion", m, n)
    if m is None:
        rep.skipped.append("the fusion formula needs finite m")
        return rep
    rows = fusion.verify_fusion(m, n)
    rep.extra["idempotents"] = len(fusion.all_tableaux(m, n))
    rep.add("fusion idempotents and weights", rows)
    rep.add("Baxterized tau(rho)", [("tau(rho)(rho - tau) = (rho - v_1)...(rho - v_m)", fusion.check_tau_rho(m, max(n, 1)))])
    nd = fusion.nondegeneracy_check(GammaFunctional.circ(m), m, n)
    rows = [("gamma-circ is non-degenerate", not nd.degenerate)]
    if m >= 2 and n >= 1:
        bad = fusion.degenerate_gamma(m)
        d = fusion.nondegeneracy_check(bad, m, n)
        rows.append(("constructed gamma is degenerate with witness v1", d.degenerate and d.p == 1 and d.i == 0))
        vanishing = [lam for lam in fusion.multipartitions(m, n) if fusion.weights(lam, bad).w.is_zero()]
        rows.append(("a weight of the degenerate gamma vanishes", bool(vanishing)))
    rep.add("non-degeneracy criterion", rows)
    return rep


RUNNERS: dict[str, Callable[..., SuiteReport]] = {
    "relations": suite_relations,
    "flatness": suite_flatness,
    "group": suite_group,
    "induced": suite_induced,
    "traces": suite_traces,
    "central": suite_central,
    "fusion": suite_fusion,
}


def run_suite(name: str, m: int | None, n: int, **kw) -> list[SuiteReport]:
    if name == "all":
        return [RUNNERS[s](m, n, **kw) for s in SUITES]
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return [RUNNERS[name](m, n, **kw)]
