"""The two embeddings that realize a group as a maximal subgroup.

Both start from a label matrix over the group's generating set, define a
family of idempotent row/column maps steered by that matrix, and close the
family together with the full rectangular band.  The first takes a
presentation in product form (one pair of rows per relation); the second
takes a finite multiplication table (three rows, one column per ordered pair
of elements) and always produces a regular semigroup.

Each builder verifies the structural facts the later pipeline stages rely on
(idempotent census, product laws, eggbox shape) and fails fast on violation;
the same checks can be re-run on a finished construction via its report.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import CayleyTable
from .presentations import TriangularPresentation
from .semigroups import (
    DEFAULT_CLOSURE_CAP,
    FiniteSemigroup,
    close,
    greens,
    is_regular_semigroup,
)
from .transforms import (
    RowColMap,
    Transformation,
    constant_element,
    rect_band,
    rect_band_coords,
)

__all__ = [
    "ConstructionInputError",
    "ConstructionInvariantError",
    "LabelMatrix",
    "CensusReport",
    "StructureReport",
    "TriangularConstruction",
    "CayleyConstruction",
    "triangular_label_matrix",
    "row_idempotent",
    "relation_idempotent",
    "construct_from_triangular",
    "triangular_census",
    "cayley_label_matrix",
    "cayley_pattern_idempotents",
    "pattern_element",
    "construct_from_cayley",
    "cayley_structure_report",
]


class ConstructionInputError(ValueError):
    pass


class ConstructionInvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class LabelMatrix:
    """A grid of group-element labels; row 1 and column 1 are all unit."""

    entries: tuple[tuple[str, ...], ...]
    unit: str = "1"

    def __post_init__(self):
        if any(e != self.unit for e in self.entries[0]):
            raise ValueError("row 1 must be all unit")
        if any(row[0] != self.unit for row in self.entries):
            raise ValueError("column 1 must be all unit")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> str:
        return self.entries[i - 1][j - 1]


# ---------------------------------------------------------------------------
# Embedding of a presentation in product form


def triangular_label_matrix(tri: TriangularPresentation) -> LabelMatrix:
    """The (1+2q) x (1+p+2q) label matrix of a product-form presentation.

    Rows come in pairs, one pair per relation b c = d: both rows repeat the
    full generator list in columns 2..p+1, and the relation's own column pair
    carries (1, c) over (b, d).
    """
    p, q = tri.p, tri.q
    m, n = 1 + 2 * q, 1 + p + 2 * q
    grid = [["1"] * n for _ in range(m)]
    for u in range(1, q + 1):
        b, c, d = tri.triples[u - 1]
        for row in (2 * u, 2 * u + 1):
            for r in range(1, p + 1):
                grid[row - 1][r] = tri.names[r - 1]
        grid[2 * u - 1][p + 2 * u] = tri.names[c]
        grid[2 * u][p + 2 * u - 1] = tri.names[b]
        grid[2 * u][p + 2 * u] = tri.names[d]
    return LabelMatrix(tuple(tuple(row) for row in grid))


def row_idempotent(u: int, matrix: LabelMatrix, tri: TriangularPresentation) -> RowColMap:
    """The idempotent attached to matrix row u (2 <= u <= rows).

    Its row map sends everything except 1 to u; its column map fixes the
    leading generator block and sends each remaining column to the block
    column carrying the same label as matrix row u (unit label to column 1).
    """
    p = tri.p
    m, n = matrix.rows, matrix.cols
    if not 2 <= u <= m:
        raise ValueError(f"row index {u} out of range 2..{m}")
    label_col = {matrix.unit: 1}
    for r in range(1, p + 1):
        label_col[tri.names[r - 1]] = r + 1
    left = Transformation(tuple(1 if x == 1 else u for x in range(1, m + 1)))
    images = []
    for x in range(1, n + 1):
        if x <= p + 1:
            images.append(x)
        else:
            label = matrix.entry(u, x)
            if label not in label_col:
                raise ValueError(
                    f"matrix entry {label!r} at ({u},{x}) is not a generator or unit"
                )
            images.append(label_col[label])
    elem = RowColMap(left, Transformation(tuple(images)))
    assert elem.is_idempotent()
    return elem


def relation_idempotent(u: int, m: int, n: int, p: int) -> RowColMap:
    """The idempotent attached to relation u (1-based).

    Its row map retracts everything except 2u+1 onto 2u; its column map sends
    the relation's own column pair onto its first member and everything else
    to column 1.
    """
    if not 1 <= 2 * u + 1 <= m:
        raise ValueError(f"relation index {u} out of range for {m} rows")
    left = Transformation(
        tuple(2 * u + 1 if x == 2 * u + 1 else 2 * u for x in range(1, m + 1))
    )
    right = Transformation(
        tuple(
            p + 2 * u if x in (p + 2 * u, p + 2 * u + 1) else 1
            for x in range(1, n + 1)
        )
    )
    elem = RowColMap(left, right)
    assert elem.is_idempotent()
    return elem


@dataclass
class CensusReport:
    """Outcome of the idempotent census and length-two product laws."""

    ok: bool
    failures: list[str]
    band_size: int
    extra_idempotents: int
    idempotent_count: int
    semigroup_size: int
    non_idempotent_pairs: list[tuple[int, int]]


@dataclass
class TriangularConstruction:
    presentation: TriangularPresentation
    matrix: LabelMatrix
    row_maps: list[RowColMap]
    relation_maps: list[RowColMap]
    semigroup: FiniteSemigroup
    census: CensusReport

    @property
    def m(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols


def triangular_census(construction: "TriangularConstruction") -> CensusReport:
    """Verify the idempotent census and all length-two product laws.

    The idempotents must be exactly the band plus the defining maps; products
    obey: row*row keeps the first factor, relation*relation keeps the first
    factor or drops to the band, row*relation drops to the band, and
    relation*row drops to the band or is a non-idempotent.
    """
    s = construction.semigroup
    m, n = construction.m, construction.n
    failures: list[str] = []
    band = rect_band((m, n))
    expected_idem = {s.index(b) for b in band}
    expected_idem.update(s.index(x) for x in construction.row_maps)
    expected_idem.update(s.index(x) for x in construction.relation_maps)
    actual_idem = set(s.idempotents())
    if actual_idem != expected_idem:
        extra = sorted(actual_idem - expected_idem)
        missing = sorted(expected_idem - actual_idem)
        failures.append(
            f"idempotent census: unexpected {extra}, missing {missing}"
        )

    rows = construction.row_maps
    rels = construction.relation_maps
    non_idem: list[tuple[int, int]] = []
    for iu, a in enumerate(rows):
        u = iu + 2
        for iv, b in enumerate(rows):
            if a * b != a:
                failures.append(f"row({u})*row({iv + 2}) != row({u})")
        for iv, b in enumerate(rels):
            if a * b != constant_element(u, 1, s.ambient):
                failures.append(f"row({u})*relation({iv + 1}) != constant({u},1)")
    for iu, a in enumerate(rels):
        u = iu + 1
        for iv, b in enumerate(rels):
            v = iv + 1
            expected = a if u == v else constant_element(2 * u, 1, s.ambient)
            if a * b != expected:
                failures.append(f"relation({u})*relation({v}) law violated")
        for iv, b in enumerate(rows):
            v = iv + 2
            product = a * b
            if product == constant_element(2 * u, 1, s.ambient):
                continue
            if product.is_idempotent():
                failures.append(
                    f"relation({u})*row({v}) is an unexpected idempotent"
                )
            else:
                non_idem.append((u, v))

    return CensusReport(
        ok=not failures,
        failures=failures,
        band_size=m * n,
        extra_idempotents=len(rows) + len(rels),
        idempotent_count=len(actual_idem),
        semigroup_size=s.size,
        non_idempotent_pairs=non_idem,
    )


def construct_from_triangular(
    tri: TriangularPresentation,
    cap: int = DEFAULT_CLOSURE_CAP,
    check: bool = True,
) -> TriangularConstruction:
    """Build and verify the embedding of a product-form presentation."""
    if tri.q == 0:
        raise ConstructionInputError(
            "the construction needs at least one relation; "
            "use the pure-band pipeline for free groups"
        )
    matrix = triangular_label_matrix(tri)
    m, n = matrix.rows, matrix.cols
    row_maps = [row_idempotent(u, matrix, tri) for u in range(2, m + 1)]
    relation_maps = [relation_idempotent(u, m, n, tri.p) for u in range(1, tri.q + 1)]
    generators = row_maps + relation_maps + rect_band((m, n))
    semigroup = close(generators, cap=cap)
    construction = TriangularConstruction(
        presentation=tri,
        matrix=matrix,
        row_maps=row_maps,
        relation_maps=relation_maps,
        semigroup=semigroup,
        census=CensusReport(True, [], 0, 0, 0, 0, []),
    )
    construction.census = triangular_census(construction)
    if check and not construction.census.ok:
        raise ConstructionInvariantError(construction.census.failures[0])
    return construction


# ---------------------------------------------------------------------------
# Embedding of a finite multiplication table

# The six generating patterns and the twelve length-2/3 products they close
# into, as (row map images, column map action on label pairs).  Only patterns
# 5, 6 and their derivatives use the group multiplication.
_LEFT_TABLES = {
    1: (1, 2, 2),
    2: (1, 2, 1),
    3: (1, 1, 3),
    4: (1, 3, 3),
    5: (2, 2, 3),
    6: (3, 2, 3),
    7: (1, 1, 2),
    8: (2, 2, 1),
    9: (3, 1, 3),
    10: (1, 3, 1),
    11: (2, 3, 3),
    12: (3, 2, 2),
    13: (2, 1, 2),
    14: (2, 1, 1),
    15: (3, 1, 1),
    16: (3, 3, 1),
    17: (2, 3, 2),
    18: (3, 3, 2),
}


def _right_pair(idx: int, t: CayleyTable, g: int, h: int) -> tuple[int, int]:
    e = t.identity
    if idx == 1:
        return (g, g)
    if idx == 2:
        return (g, e)
    if idx == 3:
        return (e, h)
    if idx == 4:
        return (h, h)
    if idx == 5:
        return (e, t.mul(h, t.inv(g)))
    if idx == 6:
        return (t.mul(g, t.inv(h)), e)
    if idx == 7:
        return (e, g)
    if idx == 8:
        return (e, t.inv(g))
    if idx == 9:
        return (t.inv(h), e)
    if idx == 10:
        return (h, e)
    if idx == 11:
        x = t.mul(h, t.inv(g))
        return (x, x)
    if idx == 12:
        x = t.mul(g, t.inv(h))
        return (x, x)
    if idx == 13:
        return (t.inv(g), e)
    if idx == 14:
        x = t.inv(g)
        return (x, x)
    if idx == 15:
        x = t.inv(h)
        return (x, x)
    if idx == 16:
        return (e, t.inv(h))
    if idx == 17:
        return (t.mul(h, t.inv(g)), e)
    if idx == 18:
        return (e, t.mul(g, t.inv(h)))
    raise ValueError(f"no pattern {idx}")


_DERIVED_PRODUCTS = {
    7: (1, 3),
    8: (2, 5),
    9: (3, 6),
    10: (4, 2),
    11: (5, 4),
    12: (6, 1),
    13: (1, 3, 6),
    14: (2, 5, 4),
    15: (3, 6, 1),
    16: (4, 2, 5),
    17: (5, 4, 2),
    18: (6, 1, 3),
}


def cayley_label_matrix(t: CayleyTable) -> LabelMatrix:
    """The 3 x order^2 label matrix whose columns run through all ordered
    pairs of elements, first coordinate major (so column 1 is the unit pair)."""
    order = t.order
    row2, row3 = [], []
    for g in range(order):
        for h in range(order):
            row2.append(t.names[g])
            row3.append(t.names[h])
    unit = t.names[t.identity]
    return LabelMatrix(
        (tuple([unit] * order * order), tuple(row2), tuple(row3)), unit=unit
    )


def pattern_element(idx: int, t: CayleyTable) -> RowColMap:
    """Pattern ``idx`` (1..18) realized over the column order of the label
    matrix: the column for pair (g,h) maps to the column for the transformed
    pair."""
    order = t.order
    left = Transformation(_LEFT_TABLES[idx])
    images = []
    for g in range(order):
        for h in range(order):
            g2, h2 = _right_pair(idx, t, g, h)
            images.append(g2 * order + h2 + 1)
    return RowColMap(left, Transformation(tuple(images)))


def cayley_pattern_idempotents(t: CayleyTable) -> list[RowColMap]:
    """The six generating idempotents of the multiplication-table embedding."""
    elems = [pattern_element(idx, t) for idx in range(1, 7)]
    for e in elems:
        assert e.is_idempotent()
    return elems


@dataclass
class StructureReport:
    ok: bool
    failures: list[str]
    boundary: bool
    generated_closure_size: int
    d_class_size: int
    idempotents_outside_band: int
    regular: bool
    regular_checked: bool
    eggbox_rows: int
    eggbox_cols: int
    h_class_size: int
    idempotent_free_cells: int


@dataclass
class CayleyConstruction:
    table: CayleyTable
    matrix: LabelMatrix
    pattern_maps: list[RowColMap]
    derived_maps: list[RowColMap]
    semigroup: FiniteSemigroup
    report: StructureReport

    @property
    def n(self) -> int:
        return self.matrix.cols


def cayley_structure_report(construction: "CayleyConstruction") -> StructureReport:
    """Verify the structural properties of the multiplication-table embedding.

    For a nontrivial group: the six patterns alone close into 21 elements
    (themselves, twelve derived products, three band constants); the full
    semigroup is the band plus an 18-element class; exactly six idempotents
    lie outside the band; the semigroup is regular; and the 18-element class
    forms a 3x3 eggbox with cells of size 2, two idempotents per row and
    column, and exactly three idempotent-free cells.
    """
    t = construction.table
    s = construction.semigroup
    boundary = t.order == 1
    failures: list[str] = []

    for idx, elem in enumerate(construction.pattern_maps, start=1):
        if not elem.is_idempotent():
            failures.append(f"pattern({idx}) is not idempotent")

    small = close(construction.pattern_maps)
    d_elems = set(construction.pattern_maps) | set(construction.derived_maps)

    if not boundary:
        for idx, elem in enumerate(construction.derived_maps, start=7):
            factors = _DERIVED_PRODUCTS[idx]
            product = construction.pattern_maps[factors[0] - 1]
            for f in factors[1:]:
                product = product * construction.pattern_maps[f - 1]
            if product != elem:
                failures.append(f"pattern({idx}) does not equal its defining product")

        if small.size != 21:
            failures.append(f"closure of the six patterns has {small.size} elements")
        expected_small = set(d_elems)
        expected_small.update(
            constant_element(i, 1, s.ambient) for i in (1, 2, 3)
        )
        if set(small.elements) != expected_small:
            failures.append("closure of the six patterns has unexpected elements")

        if len(d_elems) != 18:
            failures.append(f"derived class has {len(d_elems)} distinct elements")
        band_size = 3 * construction.matrix.cols
        if s.size != band_size + 18:
            failures.append(
                f"semigroup size {s.size} != band {band_size} + 18"
            )
        for elem in s.elements:
            if rect_band_coords(elem) is None and elem not in d_elems:
                failures.append("semigroup contains an element outside band and class")
                break

        outside = [
            e
            for e in s.idempotents()
            if rect_band_coords(s.elements[e]) is None
        ]
        if len(outside) != 6 or {s.elements[e] for e in outside} != set(
            construction.pattern_maps
        ):
            failures.append(
                f"{len(outside)} idempotents outside the band, expected the six patterns"
            )

        regular = is_regular_semigroup(s)
        if not regular:
            failures.append("semigroup is not regular")

        gs = greens(s)
        if len(gs.d_classes) != 2:
            failures.append(f"{len(gs.d_classes)} D-classes, expected 2")
        d_idx = gs.d_of[s.index(construction.pattern_maps[0])]
        dcls = gs.d_classes[d_idx]
        if len(dcls) != 18:
            failures.append(f"D-class of pattern(1) has {len(dcls)} elements")
        grid = gs.eggboxes[d_idx]
        nrows_box = len(grid)
        ncols_box = len(grid[0]) if grid else 0
        h_sizes = {len(cell) for row in grid for cell in row}
        idem_set = set(s.idempotents())
        idem_per_cell = [
            [sum(1 for x in cell if x in idem_set) for cell in row] for row in grid
        ]
        empty_cells = sum(
            1 for row in idem_per_cell for c in row if c == 0
        )
        if (nrows_box, ncols_box) != (3, 3):
            failures.append(f"eggbox is {nrows_box}x{ncols_box}, expected 3x3")
        if h_sizes != {2}:
            failures.append(f"H-class sizes {sorted(h_sizes)}, expected all 2")
        if any(sum(row) != 2 for row in idem_per_cell):
            failures.append("some eggbox row does not carry exactly 2 idempotents")
        if any(
            sum(idem_per_cell[r][c] for r in range(nrows_box)) != 2
            for c in range(ncols_box)
        ):
            failures.append("some eggbox column does not carry exactly 2 idempotents")
        if empty_cells != 3:
            failures.append(f"{empty_cells} idempotent-free cells, expected 3")
        if any(c > 1 for row in idem_per_cell for c in row):
            failures.append("an eggbox cell carries more than one idempotent")

        return StructureReport(
            ok=not failures,
            failures=failures,
            boundary=False,
            generated_closure_size=small.size,
            d_class_size=len(dcls),
            idempotents_outside_band=len(outside),
            regular=regular,
            regular_checked=True,
            eggbox_rows=nrows_box,
            eggbox_cols=ncols_box,
            h_class_size=2 if h_sizes == {2} else -1,
            idempotent_free_cells=empty_cells,
        )

    return StructureReport(
        ok=not failures,
        failures=failures,
        boundary=True,
        generated_closure_size=small.size,
        d_class_size=-1,
        idempotents_outside_band=-1,
        regular=is_regular_semigroup(s),
        regular_checked=True,
        eggbox_rows=-1,
        eggbox_cols=-1,
        h_class_size=-1,
        idempotent_free_cells=-1,
    )


def construct_from_cayley(
    t: CayleyTable,
    cap: int = DEFAULT_CLOSURE_CAP,
    check: bool = True,
) -> CayleyConstruction:
    """Build and verify the embedding of a finite multiplication table."""
    matrix = cayley_label_matrix(t)
    patterns = cayley_pattern_idempotents(t)
    derived = [pattern_element(idx, t) for idx in range(7, 19)]
    generators = patterns + rect_band((3, matrix.cols))
    semigroup = close(generators, cap=cap)
    construction = CayleyConstruction(
        table=t,
        matrix=matrix,
        pattern_maps=patterns,
        derived_maps=derived,
        semigroup=semigroup,
        report=StructureReport(
            True, [], False, 0, 0, 0, False, False, 0, 0, 0, 0
        ),
    )
    construction.report = cayley_structure_report(construction)
    if check and not construction.report.ok:
        raise ConstructionInvariantError(construction.report.failures[0])
    return construction
