"""Explicit enumeration of finitely generated subsemigroups of the ambient
monoid, with Green's relations, eggbox diagrams, regularity, and sandwich
sets.

The closure is breadth-first by product length, so element order is
deterministic given the generator order; everything downstream (class
representatives, reports, golden tests) relies on that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .transforms import RowColMap, rect_band

__all__ = [
    "CapacityExceeded",
    "FiniteSemigroup",
    "GreensStructure",
    "close",
    "greens",
    "is_regular_semigroup",
    "sandwich_set",
    "is_regular_biorder",
    "rig_relations",
]

DEFAULT_CLOSURE_CAP = 100_000

# Full product tables are only cached for semigroups up to this size.
TABLE_CACHE_LIMIT = 4096


class CapacityExceeded(RuntimeError):
    """Closure grew past the requested cap; carries the partial count."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"closure exceeded cap {cap} (at least {count} elements)")
        self.count = count
        self.cap = cap


@dataclass
class FiniteSemigroup:
    """An explicitly enumerated semigroup of RowColMap elements.

    ``elements`` is in closure order and ``generators`` indexes into it.
    The product of two element indices is again an element index.
    """

    ambient: tuple[int, int]
    elements: list[RowColMap]
    generators: list[int]
    _index: dict[RowColMap, int] = field(repr=False, default_factory=dict)
    _table: list[list[int]] | None = field(repr=False, default=None)
    _idempotents: list[int] | None = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, x: RowColMap) -> int:
        return self._index[x]

    def __contains__(self, x: RowColMap) -> bool:
        return x in self._index

    def product(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    def table(self) -> list[list[int]]:
        """The full product table, cached (small semigroups only)."""
        if self._table is None:
            if self.size > TABLE_CACHE_LIMIT:
                raise CapacityExceeded(self.size, TABLE_CACHE_LIMIT)
            idx = self._index
            els = self.elements
            self._table = [[idx[a * b] for b in els] for a in els]
        return self._table

    def idempotents(self) -> list[int]:
        """Indices of all idempotent elements, in element order."""
        if self._idempotents is None:
            self._idempotents = [
                i for i, a in enumerate(self.elements) if a.is_idempotent()
            ]
        return self._idempotents

    def contains_band(self) -> bool:
        return all(b in self._index for b in rect_band(self.ambient))


def close(generators: list[RowColMap], cap: int = DEFAULT_CLOSURE_CAP) -> FiniteSemigroup:
    """Enumerate the subsemigroup generated by ``generators``.

    Breadth-first by product length; raises CapacityExceeded when the closure
    grows past ``cap``.
    """
    if not generators:
        raise ValueError("need at least one generator")
    ambient = generators[0].ambient
    for g in generators:
        if g.ambient != ambient:
            raise ValueError(f"ambient mismatch: {g.ambient} vs {ambient}")
    if cap < len(set(generators)):
        raise CapacityExceeded(len(set(generators)), cap)

    elements: list[RowColMap] = []
    index: dict[RowColMap, int] = {}
    gen_indices: list[int] = []
    for g in generators:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
        gen_indices.append(index[g])
    gens = [elements[i] for i in dict.fromkeys(gen_indices)]

    frontier = list(range(len(elements)))
    while frontier:
        new: list[int] = []
        for u in frontier:
            left = elements[u]
            for g in gens:
                p = left * g
                if p not in index:
                    if len(elements) >= cap:
                        raise CapacityExceeded(len(elements) + 1, cap)
                    index[p] = len(elements)
                    elements.append(p)
                    new.append(index[p])
        frontier = new

    return FiniteSemigroup(
        ambient=ambient,
        elements=elements,
        generators=list(dict.fromkeys(gen_indices)),
        _index=index,
    )


@dataclass
class GreensStructure:
    """Green's R/L/H/D partitions and the per-D-class eggbox grids.

    Partitions are lists of classes; each class is a sorted list of element
    indices and classes are ordered by their least member.  ``eggboxes[d]``
    is a grid indexed by (R-class, L-class) restricted to D-class ``d``.
    """

    r_classes: list[list[int]]
    l_classes: list[list[int]]
    h_classes: list[list[int]]
    d_classes: list[list[int]]
    r_of: list[int]
    l_of: list[int]
    d_of: list[int]
    eggboxes: list[list[list[list[int]]]]
    eggbox_r_ids: list[list[int]]
    eggbox_l_ids: list[list[int]]


def _sccs(n: int, adjacency: list[list[int]]) -> list[int]:
    """Strongly connected components (iterative Tarjan); returns component ids."""
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    counter = 0
    ncomp = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adjacency[v])):
                w = adjacency[v][i]
                if index_of[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index_of[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _canonical_partition(n: int, comp_of: list[int]) -> tuple[list[list[int]], list[int]]:
    members: dict[int, list[int]] = {}
    for i, c in enumerate(comp_of):
        members.setdefault(c, []).append(i)
    classes = sorted(members.values(), key=lambda cls: cls[0])
    relabel = [0] * n
    for new_id, cls in enumerate(classes):
        for i in cls:
            relabel[i] = new_id
    return classes, relabel


def greens(s: FiniteSemigroup) -> GreensStructure:
    """Compute Green's relations on an enumerated semigroup.

    R-classes are the strongly connected components of right multiplication
    by generators (reachability over the monoid extension, so every element
    reaches itself); L-classes dually; H is the common refinement and D the
    join of R and L.
    """
    n = s.size
    gens = s.generators
    right_adj = [[s.product(u, g) for g in gens] for u in range(n)]
    left_adj = [[s.product(g, u) for g in gens] for u in range(n)]
    r_classes, r_of = _canonical_partition(n, _sccs(n, right_adj))
    l_classes, l_of = _canonical_partition(n, _sccs(n, left_adj))

    h_members: dict[tuple[int, int], list[int]] = {}
    for u in range(n):
        h_members.setdefault((r_of[u], l_of[u]), []).append(u)
    h_classes = sorted(h_members.values(), key=lambda cls: cls[0])

    # D is the join of R and L: merge every R-class and every L-class.
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for cls in r_classes:
        for u in cls[1:]:
            union(cls[0], u)
    for cls in l_classes:
        for u in cls[1:]:
            union(cls[0], u)
    d_classes, d_of = _canonical_partition(n, [find(u) for u in range(n)])

    eggboxes, box_r_ids, box_l_ids = [], [], []
    for dcls in d_classes:
        r_ids = sorted({r_of[u] for u in dcls}, key=lambda r: r_classes[r][0])
        l_ids = sorted({l_of[u] for u in dcls}, key=lambda l: l_classes[l][0])
        grid = [
            [h_members.get((r, l), []) for l in l_ids]
            for r in r_ids
        ]
        eggboxes.append(grid)
        box_r_ids.append(r_ids)
        box_l_ids.append(l_ids)

    return GreensStructure(
        r_classes=r_classes,
        l_classes=l_classes,
        h_classes=h_classes,
        d_classes=d_classes,
        r_of=r_of,
        l_of=l_of,
        d_of=d_of,
        eggboxes=eggboxes,
        eggbox_r_ids=box_r_ids,
        eggbox_l_ids=box_l_ids,
    )


def is_regular_semigroup(s: FiniteSemigroup) -> bool:
    """True iff every element a has some x with a*x*a = a."""
    t = s.table()
    n = s.size
    for a in range(n):
        row = t[a]
        if not any(t[row[x]][a] == a for x in range(n)):
            return False
    return True


def _check_idempotent(s: FiniteSemigroup, e: int, name: str) -> None:
    if s.product(e, e) != e:
        raise ValueError(f"{name} (index {e}) is not an idempotent")


def sandwich_set(s: FiniteSemigroup, e: int, f: int) -> list[int]:
    """All idempotents h with e*h*f = e*f and f*h*e = h, in element order."""
    _check_idempotent(s, e, "e")
    _check_idempotent(s, f, "f")
    t = s.table()
    ef = t[e][f]
    return [
        h
        for h in s.idempotents()
        if t[t[e][h]][f] == ef and t[t[f][h]][e] == h
    ]


def is_regular_biorder(s: FiniteSemigroup) -> bool:
    """True iff every pair of idempotents has a nonempty sandwich set."""
    t = s.table()
    idem = s.idempotents()
    for e in idem:
        for f in idem:
            ef = t[e][f]
            if not any(
                t[t[e][h]][f] == ef and t[t[f][h]][e] == h for h in idem
            ):
                return False
    return True


def rig_relations(s: FiniteSemigroup) -> list[tuple[int, int, int]]:
    """All triples (e, h, f) with h in the sandwich set of (e, f).

    These are the extra defining relations e*h*f = e*f of the regular quotient
    of the free idempotent generated semigroup; they are reported as
    semigroup-level data only and never rewritten into subgroup presentations.
    """
    out = []
    for e in s.idempotents():
        for f in s.idempotents():
            for h in sandwich_set(s, e, f):
                out.append((e, h, f))
    return out
