import pytest

from igmax.constructions import LabelMatrix
from igmax.semigroups import close
from igmax.squares import (
    UNIT,
    SingularSquare,
    classify,
    close_identifications,
    grid_presentation,
    h1_group_presentation,
    identification_matches_matrix,
    residual_relations,
    residue_presentation,
    singular_squares,
    structural_units,
)
from igmax.transforms import RowColMap, Transformation, rect_band


def test_band_has_no_squares():
    s = close(rect_band((3, 4)))
    assert singular_squares(s) == []


def test_requires_full_band():
    s = close(rect_band((3, 4))[:-1])
    with pytest.raises(ValueError):
        singular_squares(s)


def test_klein_flagship_square(klein_pipeline):
    gp = klein_pipeline.grid
    (sq,) = [x for x in gp.squares if x.coords == (2, 3, 5, 6)]
    assert sq.kind == "LR"
    # the witness is the first relation map, the lowest-index witness
    s = klein_pipeline.construction.semigroup
    assert sq.witness == s.index(klein_pipeline.construction.relation_maps[0])
    assert sq.shape == "three-quarter"


def test_k4_flagship_square(k4_pipeline):
    gp = k4_pipeline.grid
    (sq,) = [x for x in gp.squares if x.coords == (1, 2, 6, 5)]
    assert sq.kind == "LR"
    assert sq.witness == k4_pipeline.construction.semigroup.index(
        k4_pipeline.construction.pattern_maps[0]
    )
    assert sq.shape == "flush-top"


def test_square_counts_frozen(klein_pipeline, k4_pipeline):
    assert len(klein_pipeline.grid.squares) == 212
    assert len(klein_pipeline.grid.distinct_square_tuples()) == 198
    assert len(k4_pipeline.grid.squares) == 198
    assert len(k4_pipeline.grid.distinct_square_tuples()) == 180


def test_no_degenerate_tuples(klein_pipeline, k4_pipeline):
    for gp in (klein_pipeline.grid, k4_pipeline.grid):
        for sq in gp.squares:
            assert sq.i != sq.k and sq.j != sq.l


def test_symmetry_laws(klein_pipeline, k4_pipeline):
    for gp in (klein_pipeline.grid, k4_pipeline.grid):
        have = {(sq.kind, *sq.coords) for sq in gp.squares}
        for sq in gp.squares:
            if sq.kind == "LR":
                assert ("LR", sq.k, sq.i, sq.j, sq.l) in have
            else:
                assert ("UD", sq.i, sq.k, sq.l, sq.j) in have


def test_witness_replay(klein_pipeline, k4_pipeline):
    for pipeline in (klein_pipeline, k4_pipeline):
        s = pipeline.construction.semigroup
        for sq in pipeline.grid.squares:
            beta = s.elements[sq.witness]
            assert beta.is_idempotent()
            if sq.kind == "LR":
                assert beta.left(sq.i) == sq.i and beta.left(sq.k) == sq.k
                assert beta.right(sq.j) == sq.j and beta.right(sq.l) == sq.j
            else:
                assert beta.left(sq.i) == sq.i and beta.left(sq.k) == sq.i
                assert beta.right(sq.j) == sq.j and beta.right(sq.l) == sq.l


def test_classify_shapes():
    units = structural_units(5, 8)
    assert classify((1, 3, 1, 4), units) == "corner"
    assert classify((1, 3, 4, 2), units) == "flush-top"
    assert classify((2, 3, 1, 4), units) == "flush-left"
    assert classify((2, 3, 5, 6), units) == "general"
    assert classify((2, 3, 5, 6), units | {(2, 5)}) == "three-quarter"


def test_degenerate_square_relation_is_trivially_true():
    # a tuple with equal rows would relate a word to itself, which is why
    # such tuples are excluded from the enumeration
    i, j, l = 2, 3, 4
    lhs = ((i, j), (i, l))
    rhs = ((i, j), (i, l))
    assert lhs == rhs


def test_h1_counts_band():
    s = close(rect_band((3, 4)))
    gp = grid_presentation(s)
    assert gp.generator_count == 12
    assert gp.unit_relation_count == 6
    assert gp.distinct_square_tuples() == []
    pres = h1_group_presentation(gp)
    assert len(pres.generators) == 12
    assert len(pres.relations) == 6


def test_h1_counts_constructions(klein_pipeline, k4_pipeline):
    assert klein_pipeline.grid.generator_count == 40
    assert k4_pipeline.grid.generator_count == 48
    pres = h1_group_presentation(k4_pipeline.grid)
    assert len(pres.relations) == (3 + 16 - 1) + 180


def test_klein_identification_matches_label_classes(klein_pipeline, klein_tri):
    gp = klein_pipeline.grid
    match = klein_pipeline.match
    assert match.ok and match.refines
    ident = gp.identification
    # the class of label a contains the whole generator column plus the two
    # relation-block occurrences
    a_root = match.root_of_symbol["a"]
    a_class = next(cls for cls in ident.classes if ident.root_of[cls[0]] == a_root)
    assert set(a_class) == {(2, 2), (3, 2), (4, 2), (5, 2), (2, 6), (5, 8)}
    # unit class picks up every unit-labeled position
    matrix = klein_pipeline.construction.matrix
    expected_units = {
        (i, j)
        for i in range(1, 6)
        for j in range(1, 9)
        if matrix.entry(i, j) == "1"
    }
    assert set(ident.unit_positions) == expected_units


def test_band_identification_only_units():
    s = close(rect_band((3, 4)))
    gp = close_identifications(grid_presentation(s))
    ident = gp.identification
    assert set(ident.unit_positions) == structural_units(3, 4)
    assert all(len(cls) == 1 for cls in ident.classes[1:])


def test_identification_fixpoint_is_order_independent(klein_pipeline):
    gp = klein_pipeline.grid
    from dataclasses import replace

    reversed_gp = replace(gp, squares=tuple(reversed(gp.squares)),
                          identification=None, residue=None)
    again = close_identifications(reversed_gp)
    assert again.identification.root_of == gp.identification.root_of


def test_merge_replay_soundness(klein_pipeline, k4_pipeline):
    """Every logged merge must be justified by its square relation at the
    moment it is applied."""
    for pipeline in (klein_pipeline, k4_pipeline):
        gp = pipeline.grid
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                if ry < rx:
                    rx, ry = ry, rx
                parent[ry] = rx

        for pos in structural_units(gp.rows, gp.cols):
            union(UNIT, pos)
        tuples = {sq.coords for sq in gp.squares}
        for coords, rule, pa, pb in gp.identification.merges:
            assert coords in tuples
            i, k, j, l = coords
            if rule == 1:
                assert find((i, j)) == find((k, j))
                assert (pa, pb) == ((i, l), (k, l))
            else:
                assert find((i, j)) == find((i, l))
                assert (pa, pb) == ((k, j), (k, l))
            union(pa, pb)
        replay_root = {p: find(p) for p in gp.identification.root_of}
        assert replay_root == gp.identification.root_of


def test_klein_residue_exact(klein_pipeline):
    gp = klein_pipeline.grid
    sym = klein_pipeline.match.symbol_of_root

    def rendered(eq):
        lhs, rhs = eq
        side = lambda w: tuple(sym[r] for r, e in w)
        return (side(lhs), side(rhs))

    assert sorted(rendered(eq) for eq in gp.residue) == [
        (("b", "a"), ("c",)),
        (("c", "b"), ("a",)),
    ]


def test_k4_residue_is_cayley_relations(k4_pipeline):
    gp = k4_pipeline.grid
    sym = k4_pipeline.match.symbol_of_root
    rendered = set()
    for lhs, rhs in gp.residue:
        rendered.add(
            (
                tuple(sym[r] for r, _ in lhs),
                tuple(sym[r] for r, _ in rhs),
            )
        )
    table = k4_pipeline.construction.table
    expected = set()
    for g in range(1, 4):
        for h in range(4):
            if h == g:
                continue
            x = table.mul(h, table.inv(g))
            lhs = tuple(
                table.names[y] for y in (x, g) if y != table.identity
            )
            rhs = (table.names[h],) if h != table.identity else ()
            if lhs != rhs:
                expected.add((lhs, rhs))
    assert rendered == expected
    assert len(rendered) == 9


def test_residue_presentation_names(k4_pipeline):
    pres = k4_pipeline.residue
    assert set(pres.generators) == {"a", "b", "c"}
    assert len(pres.relations) == 9


def test_matrix_mismatch_detected():
    s = close(rect_band((3, 4)))
    gp = residual_relations(close_identifications(grid_presentation(s)))
    entries = [["1"] * 4 for _ in range(3)]
    entries[1][1] = "x"
    match = identification_matches_matrix(gp, LabelMatrix(tuple(map(tuple, entries))))
    assert not match.ok
    # the unit label spreads over singleton non-unit classes
    assert not match.refines


def test_matrix_dimension_mismatch(k4_pipeline):
    with pytest.raises(ValueError):
        identification_matches_matrix(
            k4_pipeline.grid, LabelMatrix((("1", "1"), ("1", "1")))
        )


def test_residue_requires_identification():
    s = close(rect_band((2, 2)))
    gp = grid_presentation(s)
    with pytest.raises(ValueError):
        residual_relations(gp)
    with pytest.raises(ValueError):
        residue_presentation(gp)
