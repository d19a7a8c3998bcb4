import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclohecke import central
from cyclohecke.central import GammaFunctional, L_gamma, iota_L_gamma
from cyclohecke.hecke import AlgebraSignature, HElement, from_word, generator, identity_word, multiply
from cyclohecke.scalars import LaurentPoly, qdiff, v_var
from cyclohecke.traces import markov_trace

G0, G1 = LaurentPoly.var("gamma0"), LaurentPoly.var("gamma1")


def test_values_on_small_words():
    g = GammaFunctional.symbolic(2)
    sig = AlgebraSignature(2, 2)
    assert L_gamma(HElement.one(sig), g) == G0 * G0
    assert L_gamma(generator(sig, (1, 1)), g) == 0
    assert L_gamma(generator(sig, (0, 1)), g) == G1 * G0


def test_gamma_reduction_outside_range():
    g = GammaFunctional.symbolic(2)
    # tau^2 = (v1 + v2) tau - v1 v2
    assert g(2) == (v_var(1) + v_var(2)) * G1 - v_var(1) * v_var(2) * G0
    assert GammaFunctional.circ(2)(1) == 0


def test_affine_gamma_needs_explicit_values():
    with pytest.raises(KeyError):
        GammaFunctional(None, {0: 1}, generic=False)(-1)
    assert GammaFunctional.symbolic(None)(-1) == LaurentPoly.var("gamman1")


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3), (3, 2), (None, 2)])
def test_centrality(m, n):
    assert all(ok for _, ok in central.verify_centrality(m, n, GammaFunctional.symbolic(m)))


@pytest.mark.parametrize("m", [2, None])
def test_independent_level_functionals_are_not_central(m):
    g = GammaFunctional.symbolic(m)
    other = GammaFunctional(m, {0: LaurentPoly.var("x0"), 1: LaurentPoly.var("x1"), -1: LaurentPoly.var("x2")})
    rows = central.verify_centrality(m, 2, g, levels=[other, g])
    assert not rows[0][1]


letters = st.lists(st.sampled_from([(0, 1), (0, -1), (1, 1), (1, -1), (2, 1)]), max_size=6)


@given(letters, letters)
def test_trace_property(a, b):
    sig = AlgebraSignature(2, 3)
    g = GammaFunctional.symbolic(2)
    x, y = from_word(a, sig), from_word(b, sig)
    assert L_gamma(multiply(x, y), g) == L_gamma(multiply(y, x), g)


def test_quasi_symmetry_and_bplus():
    g = GammaFunctional.symbolic(2)
    assert all(ok for _, ok in central.check_quasi_symmetry(2, 2, g))
    assert all(ok for _, ok in central.check_bplus_multiplicativity(2, 2, g))


def test_bgamma_round_trip():
    g = GammaFunctional(2, {0: 1})
    sig = AlgebraSignature(2, 2)
    x = from_word([(0, 1), (1, 1), (0, 1)], sig)
    coords = central.to_bgamma_basis(x, g)
    acc = HElement.zero(sig)
    for w, c in coords.items():
        acc = acc + central.bgamma_element(sig, w, g).scale(c)
    assert acc == x
    assert coords.get(identity_word(2), 0) == L_gamma(x, g)


def test_bgamma_needs_nonzero_gamma0():
    with pytest.raises(ZeroDivisionError):
        central.bgamma_layer(0, 1, GammaFunctional(2, {0: 0, 1: 1}))


def test_markov_conflict_counterexample():
    """The bar-twisted form takes q - q^-1 on sigma_1, so its Markov parameter is not 0."""
    g = GammaFunctional(1, {0: 1})
    sig = AlgebraSignature(1, 2)
    s = generator(sig, (1, 1))
    assert iota_L_gamma(s, g) == qdiff()
    zero_d = central.markov_params_of(g, twisted=False)
    assert markov_trace(s, zero_d) == 0
    assert markov_trace(s, central.markov_params_of(g)) == qdiff()


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3)])
def test_markov_identification(m, n):
    rows = central.check_markov_identification(m, n, GammaFunctional(m, {0: 1}))
    assert [name for name, ok in rows if not ok] == []


@pytest.mark.parametrize("m,n,sign", [(2, 2, 1), (3, 2, -1), (2, 3, 1)])
def test_group_specialisation(m, n, sign):
    assert all(ok for _, ok in central.check_group_specialization(m, n, sign))
