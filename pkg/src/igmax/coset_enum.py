"""Coset enumeration for finitely presented groups.

A deterministic relator-based (HLT) strategy with deduction and coincidence
processing: cosets are processed in definition order, every relator is
scanned and filled at each coset, and remaining row gaps are then filled with
fresh definitions.  When the subgroup is trivial the completed table is the
right regular representation and converts into a Cayley table.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cayley import CayleyTable, make_cayley_table
from .presentations import GroupPresentation
from .words import Word, invert_word, reduce_word

__all__ = [
    "CosetEnumeration",
    "todd_coxeter",
    "cayley_from_coset_table",
]

DEFAULT_COSET_CAP = 20_000


@dataclass(frozen=True)
class CosetEnumeration:
    """Outcome of an enumeration.

    ``completed`` distinguishes a finished table from an overflow; on
    completion ``index`` is the subgroup index (the group order for the
    trivial subgroup) and ``table`` maps (coset, symbol) -> coset, where
    symbol 2g is generator g and symbol 2g+1 its inverse.
    """

    completed: bool
    index: int | None
    cosets_used: int
    table: tuple[tuple[int, ...], ...] | None
    generator_names: tuple[str, ...]


class _Overflow(Exception):
    pass


def _symbols(w: Word) -> list[int]:
    return [2 * g if e == 1 else 2 * g + 1 for g, e in w]


def todd_coxeter(
    pres: GroupPresentation,
    subgroup: list[Word] | tuple[Word, ...] = (),
    max_cosets: int = DEFAULT_COSET_CAP,
) -> CosetEnumeration:
    """Enumerate cosets of the subgroup generated by ``subgroup`` words."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ngens = len(pres.generators)
    nsym = 2 * ngens
    relators = []
    for lhs, rhs in pres.relations:
        rel = _symbols(reduce_word(lhs + invert_word(rhs)))
        if rel:
            relators.append(rel)
    subgroup_words = [_symbols(reduce_word(w)) for w in subgroup]

    table: list[list[int]] = [[-1] * nsym]
    rep = [0]
    total_defined = 1

    def find(c: int) -> int:
        while rep[c] != c:
            rep[c] = rep[rep[c]]
            c = rep[c]
        return c

    def get(c: int, s: int) -> int:
        t = table[find(c)][s]
        return -1 if t == -1 else find(t)

    def define(c: int, s: int) -> int:
        nonlocal total_defined
        if total_defined >= max_cosets:
            raise _Overflow
        c = find(c)
        new = len(table)
        table.append([-1] * nsym)
        rep.append(new)
        total_defined += 1
        table[c][s] = new
        table[new][s ^ 1] = c
        return new

    def coincide(a: int, b: int) -> None:
        pending = deque([(a, b)])
        while pending:
            x, y = pending.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            rep[y] = x
            for s in range(nsym):
                t = table[y][s]
                if t == -1:
                    continue
                t = find(t)
                u = table[x][s]
                if u == -1:
                    table[x][s] = t
                else:
                    u = find(u)
                    if u != t:
                        pending.append((u, t))
                back = table[t][s ^ 1]
                if back == -1:
                    table[t][s ^ 1] = x
                else:
                    back = find(back)
                    if back not in (x, y):
                        pending.append((back, x))

    def deduce(c: int, s: int, d: int) -> None:
        c, d = find(c), find(d)
        t = table[c][s]
        if t == -1:
            table[c][s] = d
        elif find(t) != d:
            coincide(find(t), d)
            return
        c, d = find(c), find(d)
        t = table[d][s ^ 1]
        if t == -1:
            table[d][s ^ 1] = c
        elif find(t) != c:
            coincide(find(t), c)

    def scan_and_fill(alpha: int, word: list[int]) -> None:
        f = find(alpha)
        b = f
        i, j = 0, len(word) - 1
        while True:
            while i <= j:
                t = get(f, word[i])
                if t == -1:
                    break
                f, i = t, i + 1
            if i > j:
                if f != b:
                    coincide(f, b)
                return
            while j >= i:
                t = get(b, word[j] ^ 1)
                if t == -1:
                    break
                b, j = t, j - 1
            if j < i:
                coincide(f, b)
                return
            if i == j:
                deduce(f, word[i], b)
                return
            define(f, word[i])

    try:
        for w in subgroup_words:
            if w:
                scan_and_fill(0, w)
        current = 0
        while current < len(table):
            if find(current) != current:
                current += 1
                continue
            for rel in relators:
                scan_and_fill(current, rel)
                if find(current) != current:
                    break
            if find(current) == current:
                for s in range(nsym):
                    if find(current) != current:
                        break
                    if get(current, s) == -1:
                        define(current, s)
            current += 1
    except _Overflow:
        return CosetEnumeration(
            completed=False,
            index=None,
            cosets_used=total_defined,
            table=None,
            generator_names=pres.generators,
        )

    live = [c for c in range(len(table)) if find(c) == c]
    remap = {c: i for i, c in enumerate(live)}
    final = tuple(
        tuple(remap[find(table[c][s])] for s in range(nsym)) for c in live
    )
    # Completed tables must close every relator at every coset.
    for c in range(len(live)):
        for rel in relators:
            x = c
            for s in rel:
                x = final[x][s]
            if x != c:
                raise AssertionError("incomplete enumeration escaped the main loop")
    return CosetEnumeration(
        completed=True,
        index=len(live),
        cosets_used=total_defined,
        table=final,
        generator_names=pres.generators,
    )


def cayley_from_coset_table(enum: CosetEnumeration) -> tuple[CayleyTable, dict[int, int]]:
    """Build the group's Cayley table from a completed enumeration over the
    trivial subgroup.

    Returns the table together with the assignment mapping each presentation
    generator id to its element index.  Elements are named by spanning-tree
    representative words (identity first, named "1").
    """
    if not enum.completed or enum.table is None:
        raise ValueError("enumeration did not complete")
    table = enum.table
    n = len(table)
    nsym = 2 * len(enum.generator_names)

    reps: list[tuple[int, ...] | None] = [None] * n
    reps[0] = ()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for s in range(nsym):
            t = table[c][s]
            if reps[t] is None:
                reps[t] = reps[c] + (s,)  # type: ignore[operator]
                queue.append(t)

    def name_of(word: tuple[int, ...]) -> str:
        if not word:
            return "1"
        chunks = [
            enum.generator_names[s // 2] + ("" if s % 2 == 0 else "^-1")
            for s in word
        ]
        return ".".join(chunks)

    names = [name_of(reps[c]) for c in range(n)]  # type: ignore[arg-type]

    def trace(start: int, word: tuple[int, ...]) -> int:
        x = start
        for s in word:
            x = table[x][s]
        return x

    products = [[trace(i, reps[j]) for j in range(n)] for i in range(n)]  # type: ignore[arg-type]
    cayley = make_cayley_table(names, products)
    assignment = {g: table[0][2 * g] for g in range(len(enum.generator_names))}
    return cayley, assignment
