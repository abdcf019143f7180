import pytest

from igmax.semigroups import (
    CapacityExceeded,
    close,
    greens,
    is_regular_biorder,
    is_regular_semigroup,
    rig_relations,
    sandwich_set,
)
from igmax.transforms import RowColMap, Transformation, constant_element, rect_band


def test_band_closure_is_the_band():
    s = close(rect_band((3, 4)))
    assert s.size == 12
    assert s.idempotents() == list(range(12))
    assert s.contains_band()


def test_closure_capacity():
    with pytest.raises(CapacityExceeded) as info:
        close(rect_band((10, 10)), cap=50)
    assert info.value.count > 50


def test_closure_is_product_closed(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    for i in range(s.size):
        for j in range(s.size):
            assert 0 <= s.product(i, j) < s.size


def test_closure_deterministic_order(k4_pipeline):
    gens = [
        k4_pipeline.construction.semigroup.elements[i]
        for i in k4_pipeline.construction.semigroup.generators
    ]
    again = close(gens)
    assert again.elements == k4_pipeline.construction.semigroup.elements


def test_k4_closure_sizes(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    assert s.size == 66
    assert len(s.idempotents()) == 54


def test_small_closure_21(k4_pipeline):
    s = close(k4_pipeline.construction.pattern_maps)
    assert s.size == 21
    assert len(s.idempotents()) == 9


def test_klein_closure_sizes(klein_pipeline):
    s = klein_pipeline.construction.semigroup
    # band + the six defining maps + the two non-idempotent products
    assert s.size == 40 + 6 + 2
    assert len(s.idempotents()) == 46


def test_greens_on_band():
    s = close(rect_band((3, 4)))
    gs = greens(s)
    assert len(gs.d_classes) == 1
    assert len(gs.r_classes) == 3
    assert len(gs.l_classes) == 4
    assert all(len(h) == 1 for h in gs.h_classes)


def test_greens_k4_d_class(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    gs = greens(s)
    assert sorted(len(d) for d in gs.d_classes) == [18, 48]
    top = gs.d_classes[gs.d_of[0]]
    assert len(top) == 18
    grid = gs.eggboxes[gs.d_of[0]]
    assert len(grid) == 3 and all(len(row) == 3 for row in grid)
    assert all(len(cell) == 2 for row in grid for cell in row)


def test_greens_containments(klein_pipeline):
    s = klein_pipeline.construction.semigroup
    gs = greens(s)
    for u in range(s.size):
        r = set(gs.r_classes[gs.r_of[u]])
        l = set(gs.l_classes[gs.l_of[u]])
        d = set(gs.d_classes[gs.d_of[u]])
        h = r & l
        assert u in h
        assert h <= r <= d
        assert h <= l <= d


def test_h_classes_equal_size_within_d_class(k4_pipeline, klein_pipeline):
    for s in (
        k4_pipeline.construction.semigroup,
        klein_pipeline.construction.semigroup,
    ):
        gs = greens(s)
        for grid in gs.eggboxes:
            sizes = {len(cell) for row in grid for cell in row}
            assert len(sizes) == 1 and 0 not in sizes


def test_h_class_with_idempotent_is_a_group(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    gs = greens(s)
    idem = set(s.idempotents())
    for h in gs.h_classes:
        if not idem & set(h):
            continue
        members = set(h)
        for a in h:
            for b in h:
                assert s.product(a, b) in members


def test_band_rows_same_l_class(klein_pipeline):
    s = klein_pipeline.construction.semigroup
    gs = greens(s)
    r11 = s.index(constant_element(1, 1, s.ambient))
    r21 = s.index(constant_element(2, 1, s.ambient))
    assert gs.l_of[r11] == gs.l_of[r21]
    assert gs.r_of[r11] != gs.r_of[r21]


def test_regularity():
    assert is_regular_semigroup(close(rect_band((2, 3))))


def test_k4_regular_klein_not(k4_pipeline, klein_pipeline):
    assert is_regular_semigroup(k4_pipeline.construction.semigroup)
    assert not is_regular_semigroup(klein_pipeline.construction.semigroup)


def test_sandwich_set_contains_self():
    s = close(rect_band((2, 2)))
    for e in s.idempotents():
        assert e in sandwich_set(s, e, e)


def test_sandwich_set_rejects_non_idempotent(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    idem = set(s.idempotents())
    non_idem = next(i for i in range(s.size) if i not in idem)
    with pytest.raises(ValueError):
        sandwich_set(s, non_idem, s.idempotents()[0])


def test_klein_sandwich_dichotomy(klein_pipeline):
    """Sandwich sets are empty exactly at the pairs whose product is the
    non-regular non-constant one (relation u against row 2u+1)."""
    s = klein_pipeline.construction.semigroup
    rel = [s.index(x) for x in klein_pipeline.construction.relation_maps]
    rows = {
        u: s.index(x)
        for u, x in enumerate(klein_pipeline.construction.row_maps, start=2)
    }
    for u, tau in enumerate(rel, start=1):
        for v, sigma in rows.items():
            empty = not sandwich_set(s, tau, sigma)
            assert empty == (v == 2 * u + 1)


def test_regular_biorder(k4_pipeline, klein_pipeline):
    assert is_regular_biorder(k4_pipeline.construction.semigroup)
    assert not is_regular_biorder(klein_pipeline.construction.semigroup)
    assert is_regular_biorder(close(rect_band((2, 3))))


def test_k4_sandwich_never_empty(k4_pipeline):
    s = k4_pipeline.construction.semigroup
    idem = s.idempotents()
    for e in idem:
        for f in idem:
            assert sandwich_set(s, e, f)


def test_rig_relations_band():
    s = close(rect_band((2, 2)))
    triples = rig_relations(s)
    e = s.index(constant_element(1, 1, (2, 2)))
    assert (e, e, e) in triples
    # in a band, S(e,f) is the single element f*e
    assert len(triples) == 16
    for e, h, f in triples:
        assert s.product(s.product(e, h), f) == s.product(e, f)
        assert s.product(s.product(f, h), e) == h


def test_klein_rig_has_no_triple_at_empty_pair(klein_pipeline):
    s = klein_pipeline.construction.semigroup
    tau1 = s.index(klein_pipeline.construction.relation_maps[0])
    sigma3 = s.index(klein_pipeline.construction.row_maps[1])
    triples = rig_relations(s)
    assert not [t for t in triples if t[0] == tau1 and t[2] == sigma3]
