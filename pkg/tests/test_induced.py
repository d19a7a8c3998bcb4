import pytest

from cyclohecke import induced
from cyclohecke.hecke import AlgebraSignature, from_word
from cyclohecke.scalars import v_var


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3)])
def test_regular_representation(m, n):
    sig = AlgebraSignature(m, n)
    rep = induced.regular_rep(sig)
    assert rep.dim == sig.dimension()
    assert induced.first_failure(induced.check_relations(rep)) is None
    for letter in [(0, 1)] + [(i, 1) for i in range(1, n)]:
        assert rep.letter_matrix(letter) == induced.left_multiplication_matrix(sig, letter)


@pytest.mark.parametrize("m,n,e", [(1, 3, 1), (2, 3, 1), (2, 3, 2), (3, 2, 3)])
def test_burau_modules(m, n, e):
    rep = induced.burau(AlgebraSignature(m, n), e)
    assert rep.dim == m * n
    assert induced.first_failure(induced.check_relations(rep)) is None


def test_one_dimensional_tau_eigenvalue():
    sig = AlgebraSignature(3, 1)
    rep = induced.one_dimensional(sig, 2)
    assert rep.letter_matrix((0, 1)).entry(0, 0) == v_var(2)


def test_element_matrix_is_multiplicative():
    sig = AlgebraSignature(2, 2)
    rep = induced.regular_rep(sig)
    a, b = [(0, 1), (1, 1)], [(1, -1), (0, 1), (0, 1)]
    x, y = from_word(a, sig), from_word(b, sig)
    assert rep.element_matrix(from_word(a + b, sig)) == rep.element_matrix(x) @ rep.element_matrix(y)


def test_affine_induction_is_refused():
    with pytest.raises(ValueError):
        induced.regular_rep(AlgebraSignature(None, 2))


def test_fault_is_detected():
    rep = induced.burau(AlgebraSignature(2, 2), 1)
    bad = induced.Representation(rep.sig, rep.dim, rep.tau.scale(2), rep.sigmas, None)
    assert induced.first_failure(induced.check_relations(bad)) is not None
