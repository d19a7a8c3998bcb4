from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclohecke.group import (
    GroupElement,
    GroupSignature,
    all_elements,
    all_normal_forms,
    coxeter_todd,
    format_group_word,
    normal_form,
    normal_form_to_element,
    normal_form_word,
    parse_group_word,
    reduced_word,
    word_to_element,
)


def words(n, size=12):
    letters = [(0, 1), (0, -1)] + [(i, 1) for i in range(1, n)]
    return st.lists(st.sampled_from(letters), max_size=size)


def closure(m, n):
    """Breadth-first closure of the generators: an oracle for the group itself."""
    gens = [GroupElement.generator(m, n, (0, 1))] + [GroupElement.generator(m, n, (i, 1)) for i in range(1, n)]
    seen = {GroupElement.identity(m, n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_generated_group_is_enumerated(m, n):
    els = set(all_elements(GroupSignature(m, n)))
    assert els == closure(m, n)
    assert len(els) == m**n * factorial(n)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3)])
def test_relations_of_generators(m, n):
    t = GroupElement.generator(m, n, (0, 1))
    s = [GroupElement.generator(m, n, (i, 1)) for i in range(1, n)]
    e = GroupElement.identity(m, n)
    assert word_to_element([(0, 1)] * m, GroupSignature(m, n)) == e
    assert s[0] * t * s[0] * t == t * s[0] * t * s[0]
    assert s[0] * s[1] * s[0] == s[1] * s[0] * s[1]
    assert t * s[1] == s[1] * t


@given(words(3), words(3))
def test_word_evaluation_is_a_homomorphism(u, w):
    sig = GroupSignature(3, 3)
    assert word_to_element(u + w, sig) == word_to_element(u, sig) * word_to_element(w, sig)
    g = word_to_element(u, sig)
    assert g * g.inverse() == GroupElement.identity(3, 3)


@given(words(3, 20))
def test_normal_form_round_trip(u):
    sig = GroupSignature(2, 3)
    g = word_to_element(u, sig)
    nf = normal_form(g)
    assert normal_form_to_element(nf) == g
    assert word_to_element(normal_form_word(nf), sig) == g
    assert word_to_element(reduced_word(nf), sig) == g


def test_normal_forms_are_a_bijection():
    sig = GroupSignature(3, 3)
    forms = list(all_normal_forms(sig))
    assert len(set(forms)) == 162
    assert {normal_form_to_element(f) for f in forms} == set(all_elements(sig))


def test_reduced_word_length_matches_group_length_m1():
    # for the symmetric group the reduced word length is the inversion number
    for g in all_elements(GroupSignature(1, 4)):
        inv = sum(1 for a in range(4) for b in range(a + 1, 4) if g.perm[a] > g.perm[b])
        assert len(reduced_word(normal_form(g))) == inv


def test_coset_table_matches_figure_structure():
    table = coxeter_todd(GroupSignature(3, 2))
    assert len(table.vertices) == 6
    assert sorted(table.vertices) == [(j, a) for j in range(2) for a in range(3)]
    # t cycles the three colors at j = 0 and fixes the j = 1 vertices
    t = table.actions["t"]
    for c, (j, a) in enumerate(table.vertices):
        target = table.vertices[t[c]]
        assert target == ((0, (a + 1) % 3) if j == 0 else (j, a))
    # s1 joins (0, a) with (1, a)
    s1 = table.actions["s1"]
    for c, (j, a) in enumerate(table.vertices):
        assert table.vertices[s1[c]] == (1 - j, a)


def test_affine_coset_window():
    table = coxeter_todd(GroupSignature(None, 2))
    assert table.to_json()["m"] == "inf"
    assert all(lab[0] in (0, 1) for lab in table.vertices)


def test_parse_and_format():
    w = parse_group_word("t s1 t^-2 s2")
    assert w == ((0, 1), (1, 1), (0, -1), (0, -1), (2, 1))
    assert parse_group_word(format_group_word(w)) == w
    with pytest.raises(ValueError, match="position 3"):
        parse_group_word("t  x")
