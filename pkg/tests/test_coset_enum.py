import pytest

from igmax.coset_enum import cayley_from_coset_table, todd_coxeter
from igmax.presentations import GroupPresentation
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


@pytest.mark.parametrize(
    "p, order",
    [
        (pres(("a",), "a a"), 2),
        (pres(("a",), "a a a"), 3),
        (pres(("a",), "a a a a"), 4),
        (pres(("a",), "a a a a a a"), 6),
        (pres(("a", "b"), "a a", "b b", "a b = b a"), 4),
        (pres(("a", "b"), "a a", "b b b", "a b a b"), 6),
        (pres(("a", "b"), "a a a", "b b", "a b a b"), 6),
        (pres(("a", "b"), "a a a a", "b b", "b a b = a a a"), 8),
        (pres(("a",)), None),  # free of rank 1: infinite
    ],
)
def test_orders(p, order):
    result = todd_coxeter(p, max_cosets=5000)
    if order is None:
        assert not result.completed
    else:
        assert result.completed
        assert result.index == order


def test_subgroup_index():
    s3 = pres(("a", "b"), "a a", "b b b", "a b a b")
    gens = {"a": 0, "b": 1}
    assert todd_coxeter(s3, subgroup=[parse_word("a", gens)]).index == 3
    assert todd_coxeter(s3, subgroup=[parse_word("b", gens)]).index == 2
    assert (
        todd_coxeter(
            s3, subgroup=[parse_word("a", gens), parse_word("b", gens)]
        ).index
        == 1
    )


def test_trivial_group_and_empty_presentation():
    assert todd_coxeter(pres(("a",), "a")).index == 1
    assert todd_coxeter(GroupPresentation((), ())).index == 1


def test_overflow_reports_usage():
    klein_bottle = pres(("a", "b", "c"), "b a = c", "c b = a")
    result = todd_coxeter(klein_bottle, max_cosets=500)
    assert not result.completed
    assert result.index is None
    assert result.table is None
    assert result.cosets_used == 500


def test_table_is_complete_and_consistent():
    result = todd_coxeter(pres(("a", "b"), "a a", "b b", "a b = b a"))
    assert result.completed
    table = result.table
    n = len(table)
    for row in table:
        for entry in row:
            assert 0 <= entry < n
    # generator and inverse columns are mutually inverse actions
    for c in range(n):
        for s in range(len(table[0])):
            assert table[table[c][s]][s ^ 1] == c


def test_determinism():
    p = pres(("a", "b"), "a a a a", "b b", "b a b = a a a")
    assert todd_coxeter(p).table == todd_coxeter(p).table


def test_cayley_from_coset_table_k4():
    enum = todd_coxeter(pres(("a", "b"), "a a", "b b", "a b = b a"))
    table, assignment = cayley_from_coset_table(enum)
    assert table.order == 4
    assert table.names[0] == "1"
    assert sorted(table.element_order(i) for i in range(4)) == [1, 2, 2, 2]
    # the generators act as themselves
    assert assignment[0] == table.index_of("a")
    assert assignment[1] == table.index_of("b")


def test_cayley_from_coset_table_c4():
    enum = todd_coxeter(pres(("a",), "a a a a"))
    table, _ = cayley_from_coset_table(enum)
    assert table.order == 4
    assert max(table.element_order(i) for i in range(4)) == 4


def test_cayley_from_incomplete_enumeration_rejected():
    result = todd_coxeter(pres(("a",)), max_cosets=10)
    with pytest.raises(ValueError):
        cayley_from_coset_table(result)


def test_max_cosets_validation():
    with pytest.raises(ValueError):
        todd_coxeter(pres(("a",), "a a"), max_cosets=0)
