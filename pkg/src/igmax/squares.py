"""Singular squares and the canonical presentation of the maximal subgroup.

For a semigroup containing the full rectangular band of its ambient, the
maximal subgroup of the free idempotent generated semigroup at the (1,1)
band element is presented by one generator per band coordinate, unit
relations along the first row and column, and one four-term relation per
singular square.  This module enumerates the squares, runs the
identification closure those relations force, and extracts the residual
relations over the identified classes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .presentations import GroupPresentation
from .semigroups import FiniteSemigroup
from .words import Word, reduce_word

__all__ = [
    "UNIT",
    "SingularSquare",
    "GridPresentation",
    "Identification",
    "MatrixMatch",
    "classify",
    "singular_squares",
    "grid_presentation",
    "close_identifications",
    "residual_relations",
    "identification_matches_matrix",
    "h1_group_presentation",
    "residue_presentation",
    "position_name",
]

Position = tuple[int, int]

# Sentinel node for the unit class; sorts below every 1-based position, so it
# is always the class representative of the unit class.
UNIT: Position = (0, 0)

KIND_LR = "LR"
KIND_UD = "UD"


@dataclass(frozen=True)
class SingularSquare:
    """A tuple (i,k; j,l) singularised by the idempotent at ``witness``.

    The rows i != k and columns j != l; ``kind`` records whether the witness
    fixes the two rows and collapses the columns (LR) or dually (UD).
    """

    i: int
    k: int
    j: int
    l: int
    kind: str
    witness: int
    shape: str

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.i, self.k, self.j, self.l)

    @property
    def positions(self) -> tuple[Position, Position, Position, Position]:
        return ((self.i, self.j), (self.i, self.l), (self.k, self.j), (self.k, self.l))


@dataclass(frozen=True)
class Identification:
    """Partition of grid positions forced by the square relations.

    ``root_of`` maps every position to its class representative; the unit
    class is rooted at the UNIT sentinel.  ``classes`` lists the classes
    (unit class first, then by representative), each a sorted tuple of
    positions.  ``merges`` logs every non-seed union as
    (square coords, rule, position, position) so each step can be replayed
    against its justifying relation.
    """

    root_of: dict[Position, Position]
    classes: tuple[tuple[Position, ...], ...]
    merges: tuple[tuple[tuple[int, int, int, int], int, Position, Position], ...] = ()

    @property
    def unit_positions(self) -> tuple[Position, ...]:
        return self.classes[0]

    def roots(self) -> list[Position]:
        return [UNIT] + [cls[0] for cls in self.classes[1:]]


@dataclass(frozen=True)
class GridPresentation:
    rows: int
    cols: int
    squares: tuple[SingularSquare, ...]
    identification: Identification | None = None
    residue: tuple[tuple[Word, Word], ...] | None = None
    residue_letters: tuple[Position, ...] = ()

    @property
    def generator_count(self) -> int:
        return self.rows * self.cols

    @property
    def unit_relation_count(self) -> int:
        return self.rows + self.cols - 1

    def distinct_square_tuples(self) -> list[tuple[int, int, int, int]]:
        return sorted({sq.coords for sq in self.squares})


def structural_units(rows: int, cols: int) -> set[Position]:
    units = {(1, j) for j in range(1, cols + 1)}
    units.update((i, 1) for i in range(1, rows + 1))
    return units


def classify(square, known_units) -> str:
    """Shape of a square given the positions currently known to be the unit."""
    i, k, j, l = square.coords if isinstance(square, SingularSquare) else square
    row1 = 1 in (i, k)
    col1 = 1 in (j, l)
    if row1 and col1:
        return "corner"
    if row1:
        return "flush-top"
    if col1:
        return "flush-left"
    if any(p in known_units for p in ((i, j), (i, l), (k, j), (k, l))):
        return "three-quarter"
    return "general"


def singular_squares(s: FiniteSemigroup) -> list[SingularSquare]:
    """All singular squares of the semigroup, in deterministic order.

    A tuple (i,k; j,l) is recorded when some idempotent fixes rows i and k
    while collapsing column l onto the fixed column j (LR), or fixes columns
    j and l while collapsing row k onto the fixed row i (UD).  Degenerate
    tuples with i = k or j = l yield trivially true relations and are
    excluded.  The witness stored per tuple is the lowest-index idempotent.
    """
    if not s.contains_band():
        raise ValueError("semigroup does not contain the full rectangular band")
    nrows, ncols = s.ambient
    witnesses: dict[tuple[str, int, int, int, int], int] = {}

    for e in s.idempotents():
        elem = s.elements[e]
        left, right = elem.left, elem.right
        fixed_rows = [i for i in range(1, nrows + 1) if left(i) == i]
        fixed_cols = [j for j in range(1, ncols + 1) if right(j) == j]

        col_sources: dict[int, list[int]] = {j: [] for j in fixed_cols}
        for l in range(1, ncols + 1):
            img = right(l)
            if img in col_sources and l != img:
                col_sources[img].append(l)
        for i in fixed_rows:
            for k in fixed_rows:
                if k == i:
                    continue
                for j in fixed_cols:
                    for l in col_sources[j]:
                        witnesses.setdefault((KIND_LR, i, k, j, l), e)

        row_sources: dict[int, list[int]] = {i: [] for i in fixed_rows}
        for k in range(1, nrows + 1):
            img = left(k)
            if img in row_sources and k != img:
                row_sources[img].append(k)
        for i in fixed_rows:
            for k in row_sources[i]:
                for j in fixed_cols:
                    for l in fixed_cols:
                        if l != j:
                            witnesses.setdefault((KIND_UD, i, k, j, l), e)

    units = structural_units(nrows, ncols)
    squares = []
    for kind, i, k, j, l in sorted(witnesses):
        shape = classify((i, k, j, l), units)
        squares.append(
            SingularSquare(i, k, j, l, kind, witnesses[(kind, i, k, j, l)], shape)
        )
    return squares


def grid_presentation(s: FiniteSemigroup) -> GridPresentation:
    """Generators, unit relations, and square relations for the maximal
    subgroup at the (1,1) band element (identification not yet derived)."""
    nrows, ncols = s.ambient
    return GridPresentation(
        rows=nrows, cols=ncols, squares=tuple(singular_squares(s))
    )


def close_identifications(gp: GridPresentation) -> GridPresentation:
    """Derive the coarsest identification the square relations force.

    Starting from the unit class (row 1 and column 1), each square relation
    merges one side's pair whenever the other side's pair is already known
    equal: (i,j) ~ (k,j) forces (i,l) ~ (k,l), and (i,j) ~ (i,l) forces
    (k,j) ~ (k,l).  Runs to a fixpoint; the result is order-independent.
    """
    parent: dict[Position, Position] = {}

    def find(x: Position) -> Position:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def union(x: Position, y: Position) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx

    for pos in structural_units(gp.rows, gp.cols):
        union(UNIT, pos)

    merges: list[tuple[tuple[int, int, int, int], int, Position, Position]] = []
    changed = True
    while changed:
        changed = False
        for sq in gp.squares:
            a, b, c, d = sq.positions
            if find(a) == find(c) and find(b) != find(d):
                union(b, d)
                merges.append((sq.coords, 1, b, d))
                changed = True
            if find(a) == find(b) and find(c) != find(d):
                union(c, d)
                merges.append((sq.coords, 2, c, d))
                changed = True

    all_positions = [
        (i, j) for i in range(1, gp.rows + 1) for j in range(1, gp.cols + 1)
    ]
    root_of = {p: find(p) for p in all_positions}
    members: dict[Position, list[Position]] = {}
    for p in all_positions:
        members.setdefault(root_of[p], []).append(p)
    unit_root = find(UNIT)
    class_list = [tuple(sorted(members.pop(unit_root)))]
    for root in sorted(members):
        class_list.append(tuple(sorted(members[root])))
    # Re-root the unit class at the sentinel.
    for p, r in root_of.items():
        if r == unit_root:
            root_of[p] = UNIT

    ident = Identification(
        root_of=root_of, classes=tuple(class_list), merges=tuple(merges)
    )
    final_units = set(ident.unit_positions)
    squares = tuple(
        replace(sq, shape=classify(sq, final_units)) for sq in gp.squares
    )
    return replace(gp, squares=squares, identification=ident)


def _letter(root: Position, exp: int) -> tuple[Position, int]:
    return (root, exp)


def _residue_equation(
    square: tuple[int, int, int, int], root_of: dict[Position, Position]
) -> tuple[tuple, tuple] | None:
    """Map a square relation into the quotient alphabet.

    The four-term relation reads A^-1 B = C^-1 D over the positions
    A=(i,j), B=(i,l), C=(k,j), D=(k,l).  Unit letters are dropped and the
    relation normalised to a positive product x y = z whenever a position is
    the unit; syntactically trivial results return None.
    """
    i, k, j, l = square
    a, b, c, d = root_of[(i, j)], root_of[(i, l)], root_of[(k, j)], root_of[(k, l)]
    ua, ub, uc, ud = a == UNIT, b == UNIT, c == UNIT, d == UNIT
    n_units = sum((ua, ub, uc, ud))
    if n_units == 4:
        return None
    if n_units == 1:
        if ua:
            lhs, rhs = (_letter(c, 1), _letter(b, 1)), (_letter(d, 1),)
        elif ub:
            lhs, rhs = (_letter(d, 1), _letter(a, 1)), (_letter(c, 1),)
        elif uc:
            lhs, rhs = (_letter(a, 1), _letter(d, 1)), (_letter(b, 1),)
        else:
            lhs, rhs = (_letter(b, 1), _letter(c, 1)), (_letter(a, 1),)
    elif n_units == 2:
        if ua and ud:
            lhs, rhs = (_letter(c, 1), _letter(b, 1)), ()
        elif ub and uc:
            lhs, rhs = (_letter(a, 1), _letter(d, 1)), ()
        elif ua and ub:
            lhs, rhs = (_letter(c, 1),), (_letter(d, 1),)
        elif uc and ud:
            lhs, rhs = (_letter(a, 1),), (_letter(b, 1),)
        elif ua and uc:
            lhs, rhs = (_letter(b, 1),), (_letter(d, 1),)
        else:  # ub and ud
            lhs, rhs = (_letter(a, 1),), (_letter(c, 1),)
    elif n_units == 3:
        (x,) = [r for r, u in ((a, ua), (b, ub), (c, uc), (d, ud)) if not u]
        lhs, rhs = (_letter(x, 1),), ()
    else:
        lhs = reduce_word((_letter(a, -1), _letter(b, 1)))
        rhs = reduce_word((_letter(c, -1), _letter(d, 1)))
    if lhs == rhs:
        return None
    return (lhs, rhs)


def residual_relations(gp: GridPresentation) -> GridPresentation:
    """Fill in the residual relations over the identified classes.

    Each distinct square tuple contributes its relation in the quotient
    alphabet; trivial results are discarded and duplicates (up to swapping
    sides) removed, keeping first-occurrence order.
    """
    if gp.identification is None:
        raise ValueError("identification not derived yet")
    root_of = gp.identification.root_of
    seen: set[tuple] = set()
    residue: list[tuple] = []
    letters: list[Position] = []
    letter_seen: set[Position] = set()
    for coords in gp.distinct_square_tuples():
        eq = _residue_equation(coords, root_of)
        if eq is None:
            continue
        lhs, rhs = eq
        key = (lhs, rhs) if (lhs, rhs) <= (rhs, lhs) else (rhs, lhs)
        if key in seen:
            continue
        seen.add(key)
        residue.append(eq)
        for root, _ in (*lhs, *rhs):
            if root not in letter_seen:
                letter_seen.add(root)
                letters.append(root)
    return replace(gp, residue=tuple(residue), residue_letters=tuple(letters))


@dataclass(frozen=True)
class MatrixMatch:
    """Comparison of the derived identification against the label matrix.

    ``ok`` means exact equality of the two partitions (unit label matching
    the unit class).  ``refines`` means every matrix-label class lies inside
    a single derived class, the direction the constructions guarantee; when
    it holds ``root_of_symbol`` maps each label to its class and
    ``symbol_of_root`` names each exactly-matching class by its label.
    """

    ok: bool
    refines: bool
    mismatches: tuple[str, ...]
    symbol_of_root: dict[Position, str]
    root_of_symbol: dict[str, Position]


def identification_matches_matrix(gp: GridPresentation, matrix) -> MatrixMatch:
    """Check the derived classes against the label-matrix classes, both ways."""
    if gp.identification is None:
        raise ValueError("identification not derived yet")
    if (matrix.rows, matrix.cols) != (gp.rows, gp.cols):
        raise ValueError(
            f"matrix is {matrix.rows}x{matrix.cols}, grid is {gp.rows}x{gp.cols}"
        )
    root_of = gp.identification.root_of
    symbols_of_root: dict[Position, set[str]] = {}
    roots_of_symbol: dict[str, set[Position]] = {}
    for i in range(1, gp.rows + 1):
        for j in range(1, gp.cols + 1):
            sym = matrix.entry(i, j)
            root = root_of[(i, j)]
            symbols_of_root.setdefault(root, set()).add(sym)
            roots_of_symbol.setdefault(sym, set()).add(root)
    mismatches = []
    for root, syms in sorted(symbols_of_root.items()):
        if len(syms) > 1:
            mismatches.append(
                f"class of {root} carries several labels: {sorted(syms)}"
            )
    split = False
    for sym, roots in sorted(roots_of_symbol.items()):
        if len(roots) > 1:
            split = True
            mismatches.append(
                f"label {sym!r} splits across classes rooted at {sorted(roots)}"
            )
    unit_roots = roots_of_symbol.get(matrix.unit, set())
    if unit_roots and unit_roots != {UNIT}:
        split = True
        mismatches.append(
            f"unit label {matrix.unit!r} lands outside the unit class"
        )
    refines = not split
    root_of_symbol = (
        {sym: min(roots) for sym, roots in roots_of_symbol.items()}
        if refines
        else {}
    )
    symbol_of_root = {root: min(syms) for root, syms in symbols_of_root.items()}
    return MatrixMatch(
        ok=not mismatches,
        refines=refines,
        mismatches=tuple(mismatches),
        symbol_of_root=symbol_of_root,
        root_of_symbol=root_of_symbol,
    )


def position_name(pos: Position) -> str:
    return f"f{pos[0]}_{pos[1]}"


def h1_group_presentation(gp: GridPresentation) -> GroupPresentation:
    """The full canonical presentation: one generator per grid position,
    unit relations on row 1 and column 1, one relation per square tuple."""
    positions = [
        (i, j) for i in range(1, gp.rows + 1) for j in range(1, gp.cols + 1)
    ]
    ids = {p: n for n, p in enumerate(positions)}
    names = tuple(position_name(p) for p in positions)
    relations: list[tuple[Word, Word]] = []
    for j in range(1, gp.cols + 1):
        relations.append((((ids[(1, j)], 1),), ()))
    for i in range(2, gp.rows + 1):
        relations.append((((ids[(i, 1)], 1),), ()))
    for i, k, j, l in gp.distinct_square_tuples():
        lhs = ((ids[(i, j)], -1), (ids[(i, l)], 1))
        rhs = ((ids[(k, j)], -1), (ids[(k, l)], 1))
        relations.append((lhs, rhs))
    return GroupPresentation(names, tuple(relations))


def residue_presentation(
    gp: GridPresentation, symbol_of_root: dict[Position, str] | None = None
) -> GroupPresentation:
    """The residual relations as a presentation over the non-unit classes.

    Class generators are named by their matrix labels when a mapping is
    given, otherwise by their representative position.
    """
    if gp.residue is None:
        raise ValueError("residue not computed yet")
    if gp.identification is None:
        raise ValueError("identification not derived yet")
    roots = [cls[0] for cls in gp.identification.classes[1:]]
    ids = {root: n for n, root in enumerate(roots)}

    def name(root: Position) -> str:
        if symbol_of_root is not None and root in symbol_of_root:
            return symbol_of_root[root]
        return position_name(root)

    names = tuple(name(root) for root in roots)
    relations = tuple(
        (
            tuple((ids[root], e) for root, e in lhs),
            tuple((ids[root], e) for root, e in rhs),
        )
        for lhs, rhs in gp.residue
    )
    return GroupPresentation(names, relations)
