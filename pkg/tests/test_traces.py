import pytest

from cyclohecke import traces
from cyclohecke.hecke import AlgebraSignature, HElement, from_word, generator
from cyclohecke.scalars import LaurentPoly, qdiff, v_var
from cyclohecke.traces import TraceParams, markov_trace, tr_k

D = LaurentPoly.var("D")
MU1 = LaurentPoly.var("mu1")


def test_sigma_trace_is_D():
    sig = AlgebraSignature(2, 2)
    params = TraceParams.generic(2)
    assert tr_k(generator(sig, (1, 1)), params) == HElement.scalar(AlgebraSignature(2, 1), D)


def test_values_by_hand():
    params = TraceParams.generic(2)
    sig = AlgebraSignature(2, 2)
    # sigma^2 = (q - q^-1) sigma + 1
    assert markov_trace(from_word([(1, 1), (1, 1)], sig), params) == qdiff() * D + 1
    # tau^2 = (v1 + v2) tau - v1 v2
    assert markov_trace(from_word([(0, 1), (0, 1)], AlgebraSignature(2, 1)), params) == (v_var(1) + v_var(2)) * MU1 - v_var(1) * v_var(2)
    # s t s = s t s^-1 + (q - q^-1) s t, and Tr(s t s^-1) = mu_1, Tr(s t) = D mu_1
    assert markov_trace(from_word([(1, 1), (0, 1), (1, 1)], sig), params) == MU1 + qdiff() * D * MU1


def test_specialised_parameters():
    params = TraceParams(2, D=LaurentPoly.const(0), mu={1: LaurentPoly.const(3)})
    assert markov_trace(from_word([(1, 1)], AlgebraSignature(2, 2)), params) == 0
    assert markov_trace(from_word([(0, 1)], AlgebraSignature(2, 2)), params) == 3


@pytest.mark.parametrize("m,k", [(1, 2), (1, 3), (2, 2), (2, 3), (None, 2)])
def test_axioms(m, k):
    rows = traces.verify_trace_axioms(m, k, TraceParams.generic(m))
    assert [name for name, ok in rows if not ok] == []


@pytest.mark.parametrize("m,k", [(2, 2), (2, 3)])
def test_conditional_expectation(m, k):
    assert all(ok for _, ok in traces.conditional_expectation_check(m, k, TraceParams.generic(m)))


def test_perturbed_trace_breaks_axioms():
    params = TraceParams(2, perturb_word=((1, 1), (0, 0)))
    rows = traces.verify_trace_axioms(2, 2, params)
    assert not all(ok for _, ok in rows)


def test_tr1_of_one():
    params = TraceParams.generic(3)
    assert tr_k(HElement.one(AlgebraSignature(3, 1)), params) == HElement.one(AlgebraSignature(3, 0))
