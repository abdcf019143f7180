import pytest

from igmax.coset_enum import todd_coxeter
from igmax.presentations import (
    GroupPresentation,
    TriangularPresentation,
    abelian_invariants,
    smith_normal_form,
    tietze_simplify,
    triangularize,
)
from igmax.words import parse_word


def pres(gen_names, *relation_lines):
    ids = {n: i for i, n in enumerate(gen_names)}
    relations = []
    for line in relation_lines:
        if "=" in line:
            lhs, _, rhs = line.partition("=")
            relations.append((parse_word(lhs, ids), parse_word(rhs, ids)))
        else:
            relations.append((parse_word(line, ids), ()))
    return GroupPresentation(tuple(gen_names), tuple(relations))


KLEIN = pres(("a", "b", "c"), "b a = c", "c b = a")
K4 = pres(("a", "b"), "a a", "b b", "a b = b a")
C4 = pres(("a",), "a a a a")


# --- triangularize -----------------------------------------------------------


def test_triangularize_keeps_product_form_inputs():
    t = triangularize(KLEIN)
    assert t.names == ("a", "b", "c")
    assert t.triples == ((1, 0, 2), (2, 1, 0))
    assert t.source_map == (0, 1, 2)


def test_triangularize_square_relator():
    t = triangularize(pres(("a",), "a a"))
    assert t.names == ("a", "e")
    # the identity laws plus the relation itself, encoded as a a = e
    assert t.triples == ((1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_triangularize_cube_relator():
    t = triangularize(pres(("x",), "x x x"))
    assert t.names == ("x", "e", "y")
    assert (0, 0, 2) in t.triples  # x x = y
    assert (2, 0, 1) in t.triples  # y x = e
    # identity-generator laws are present for every generator
    assert (1, 1, 1) in t.triples
    assert (1, 0, 0) in t.triples and (0, 1, 0) in t.triples
    assert (1, 2, 2) in t.triples and (2, 1, 2) in t.triples
    assert todd_coxeter(t.to_group_presentation()).index == 3


def test_triangularize_no_relations():
    t = triangularize(pres(("a",)))
    assert t.p == 1
    assert t.triples == ()


def test_triangularize_handles_inverses():
    # < a, b | a^-1 b a = b^-1 > , the Klein bottle group itself
    p = pres(("a", "b"), "a^-1 b a = b^-1")
    t = triangularize(p)
    assert abelian_invariants(t.to_group_presentation()) == abelian_invariants(p)
    for b, c, d in t.triples:
        assert 0 <= b < t.p and 0 <= c < t.p and 0 <= d < t.p


@pytest.mark.parametrize(
    "p, order",
    [
        (pres(("a",), "a a"), 2),
        (pres(("x",), "x x x"), 3),
        (K4, 4),
        (C4, 4),
        (pres(("a", "b"), "a a", "b b b", "a b a b"), 6),
    ],
)
def test_triangularize_preserves_finite_order(p, order):
    assert todd_coxeter(p).index == order
    assert todd_coxeter(triangularize(p).to_group_presentation()).index == order


# --- tietze ------------------------------------------------------------------


def test_tietze_single_elimination():
    p = pres(("a", "b"), "a = b", "b b")
    r = tietze_simplify(p)
    assert not r.exhausted
    assert len(r.presentation.generators) == 1
    assert r.presentation.relations == ((((0, 1), (0, 1)), ()),)


def test_tietze_pure_band_presentation():
    names = [f"f{i}_{j}" for i in range(1, 4) for j in range(1, 5)]
    lines = [f"f1_{j}" for j in range(1, 5)] + [f"f{i}_1" for i in range(2, 4)]
    p = pres(tuple(names), *lines)
    r = tietze_simplify(p)
    assert len(r.presentation.generators) == 6
    assert r.presentation.relations == ()


def test_tietze_drops_trivial_relations():
    p = pres(("a",), "a = a", "a a^-1")
    r = tietze_simplify(p)
    assert r.presentation.relations == ()
    assert len(r.presentation.generators) == 1


def test_tietze_preserves_group():
    for p in (K4, C4, KLEIN):
        r = tietze_simplify(p)
        assert abelian_invariants(r.presentation) == abelian_invariants(p)
    assert todd_coxeter(tietze_simplify(K4).presentation).index == 4


def test_tietze_budget_flag():
    # no eliminable generator and nothing to clean: terminates unexhausted
    p = pres(("a", "b"), "a a b a^-1 b^-1 a b^-1")
    r = tietze_simplify(p, max_passes=1)
    assert isinstance(r.exhausted, bool)


# --- smith normal form / abelian invariants ----------------------------------


def test_smith_normal_form_known():
    assert smith_normal_form([[1, 1, -1], [-1, 1, 1]]) == [1, 2]
    assert smith_normal_form([[2, 0], [0, 2], [0, 0]]) == [2, 2]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    # determinant divisors: gcd of entries 2, of 2x2 minors 12, |det| 144
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_abelian_invariants_examples():
    assert abelian_invariants(KLEIN) == [2, 0]
    assert abelian_invariants(K4) == [2, 2]
    assert abelian_invariants(C4) == [4]
    assert abelian_invariants(pres(tuple("abcdef"))) == [0] * 6


def test_abelian_invariants_renaming_invariance():
    p1 = pres(("a", "b"), "a a", "b b b")
    p2 = pres(("u", "v"), "v v v", "u u")
    assert abelian_invariants(p1) == abelian_invariants(p2)
