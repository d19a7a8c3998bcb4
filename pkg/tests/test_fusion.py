from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclohecke import fusion
from cyclohecke.central import GammaFunctional, L_gamma
from cyclohecke.fusion import MTableau, MultiPartition
from cyclohecke.hecke import AlgebraSignature, HElement, generator, multiply
from cyclohecke.scalars import LaurentPoly, ScalarValue, v_var

Q = LaurentPoly.var("q")
ONE = LaurentPoly.const(1)


def _hook_count(lam: MultiPartition) -> int:
    """Number of standard m-tableaux: n! over the product of ordinary hook lengths."""
    out = factorial(lam.size)
    for part in lam.parts:
        conj = [sum(1 for r in part if r > y) for y in range(part[0])] if part else []
        out //= prod(part[x] - y + conj[y] - x - 1 for x in range(len(part)) for y in range(part[x]))
    return out


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3), (3, 2), (3, 3)])
def test_tableau_counts_match_hook_formula(m, n):
    lams = fusion.multipartitions(m, n)
    for lam in lams:
        assert len(fusion.standard_tableaux(lam)) == _hook_count(lam)
    # semisimple dimension count
    assert sum(_hook_count(lam) ** 2 for lam in lams) == m**n * factorial(n)


def test_multipartition_json():
    lam = MultiPartition(((2, 1), ()))
    assert lam.to_json() == [[2, 1], []]
    assert MultiPartition.from_json(lam.to_json()) == lam
    with pytest.raises(ValueError):
        MultiPartition(((1, 2),))


def test_tableau_validation():
    with pytest.raises(ValueError):
        MTableau((((2, 1),),))
    T = MTableau.from_json([[[1, 3]], [[2]]])
    assert T.shape == MultiPartition(((2,), (1,)))
    assert T.contents() == [v_var(1), v_var(2), v_var(1) * Q**2]


def test_f_lambda_values():
    assert fusion.f_lambda(MultiPartition(((1,),))) == 1
    assert fusion.f_lambda(MultiPartition(((2,),))) == ScalarValue(Q**2, ONE + Q**2)


def test_idempotent_row():
    sig = AlgebraSignature(1, 2)
    E = fusion.fusion_idempotent(MTableau.from_json([[[1, 2]]]))
    expected = (generator(sig, (1, 1)).scale(Q) + HElement.one(sig)).scale(ScalarValue(ONE, ONE + Q**2))
    assert E == expected


def test_idempotent_for_one_box_in_first_diagram():
    sig = AlgebraSignature(2, 1)
    E = fusion.fusion_idempotent(MTableau.from_json([[[1]], []]))
    tau = generator(sig, (0, 1))
    expected = (tau - HElement.scalar(sig, v_var(2))).scale(ScalarValue(ONE, v_var(1) - v_var(2)))
    assert E == expected


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 1), (2, 2)])
def test_verify_fusion(m, n):
    rows = fusion.verify_fusion(m, n)
    assert [name for name, ok in rows if not ok] == []


def test_idempotents_are_orthogonal_by_multiplication():
    tabs = fusion.all_tableaux(2, 2)
    es = [fusion.fusion_idempotent(T) for T in tabs]
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            p = multiply(a, b)
            assert p == a if i == j else p.is_zero()


def test_weight_values():
    circ = GammaFunctional.circ(1)
    w = fusion.weights(MultiPartition(((2,),)), circ)
    assert w.w == ScalarValue(ONE, ONE + Q**2)
    assert fusion.weights(MultiPartition(((1, 1),)), circ).w == ScalarValue(Q**2, ONE + Q**2)


def test_weight_is_form_on_idempotent():
    g = GammaFunctional.symbolic(2)
    for T in fusion.all_tableaux(2, 2):
        assert L_gamma(fusion.fusion_idempotent(T), g) == fusion.weights(T.shape, g).w


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (3, 2)])
def test_sum_rule(m, n):
    assert all(ok for _, ok in fusion.check_sum_rule(m, n, GammaFunctional.symbolic(m)))


@given(st.integers(1, 3), st.integers(1, 3))
def test_cancellation_free_formula(m, n):
    circ = GammaFunctional.circ(m)
    for lam in fusion.multipartitions(m, n):
        assert fusion.weights(lam, circ).w == fusion.cancellation_free_weight(lam)


def test_nondegeneracy():
    assert not fusion.nondegeneracy_check(GammaFunctional.circ(2), 2, 2).degenerate
    bad = fusion.degenerate_gamma(2, p=2, i=1, sign=-1)
    d = fusion.nondegeneracy_check(bad, 2, 2)
    assert d.degenerate and (d.p, d.i, d.sign) == (2, 1, -1)
    assert any(fusion.weights(lam, bad).w.is_zero() for lam in fusion.multipartitions(2, 2))


def test_tau_rho():
    assert fusion.check_tau_rho(3, 1)
    with pytest.raises(ValueError):
        fusion.tau_rho(AlgebraSignature(None, 1), LaurentPoly.var("rho"))
