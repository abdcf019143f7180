"""Finite groups given by multiplication tables.

Tables are validated eagerly: the first element must be the identity, the
operation must be associative, and every element must have an inverse.
Failed axioms are reported with explicit witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Word

__all__ = [
    "CayleyTable",
    "CayleyValidationError",
    "make_cayley_table",
    "evaluate",
    "trivial_group",
    "cyclic_group",
    "klein_four_group",
    "symmetric_group_3",
    "groups_up_to_order_6",
]


class CayleyValidationError(ValueError):
    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


@dataclass(frozen=True)
class CayleyTable:
    """A finite group: element names, 0-based product table, inverses.

    The identity is always the first element (index 0).
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k


def make_cayley_table(names: list[str], table: list[list[int]]) -> CayleyTable:
    """Validate a multiplication table and build a CayleyTable."""
    n = len(names)
    if n == 0:
        raise CayleyValidationError("shape", "empty element list")
    if len(set(names)) != n:
        raise CayleyValidationError("shape", "duplicate element names")
    if len(table) != n or any(len(row) != n for row in table):
        raise CayleyValidationError("shape", f"table is not {n}x{n}")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise CayleyValidationError(
                    "shape", f"entry at ({names[i]}, {names[j]}) out of range"
                )
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise CayleyValidationError(
                "identity",
                f"first element {names[0]!r} is not an identity at {names[x]!r}",
            )
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise CayleyValidationError(
                        "associativity",
                        f"({names[a]} {names[b]}) {names[c]} != "
                        f"{names[a]} ({names[b]} {names[c]})",
                    )
    inverse = [-1] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == 0 and table[b][a] == 0:
                inverse[a] = b
                break
        if inverse[a] == -1:
            raise CayleyValidationError("inverses", f"{names[a]!r} has no inverse")
    return CayleyTable(tuple(names), tuple(tuple(r) for r in table), tuple(inverse))


def evaluate(t: CayleyTable, assignment: dict[int, int], w: Word) -> int:
    """Evaluate a word in the group, mapping generator ids through ``assignment``."""
    acc = t.identity
    for g, e in w:
        if g not in assignment:
            raise ValueError(f"generator {g} has no assigned element")
        x = assignment[g]
        acc = t.mul(acc, x if e == 1 else t.inv(x))
    return acc


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def trivial_group() -> CayleyTable:
    return make_cayley_table(["1"], [[0]])


def cyclic_group(n: int) -> CayleyTable:
    """Cyclic group of order n, elements 1, a, a^2=b, a^3=c, ..."""
    if n < 1:
        raise ValueError("order must be positive")
    if n - 1 > len(_LETTERS):
        raise ValueError("order too large for letter naming")
    names = ["1"] + [_LETTERS[k] for k in range(n - 1)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return make_cayley_table(names, table)


def klein_four_group() -> CayleyTable:
    """The group {1, a, b, c} with a^2 = b^2 = 1 and ab = c."""
    names = ["1", "a", "b", "c"]
    table = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ]
    return make_cayley_table(names, table)


def symmetric_group_3() -> CayleyTable:
    """Symmetric group on 3 points, built from permutation composition."""
    perms = [
        (1, 2, 3),  # identity
        (2, 3, 1),  # r
        (3, 1, 2),  # q = r^2
        (2, 1, 3),  # s
        (1, 3, 2),  # t
        (3, 2, 1),  # u
    ]
    names = ["1", "r", "q", "s", "t", "u"]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, r):
        # x -> r(p(x)), with perms acting on the right
        return tuple(r[p[x] - 1] for x in range(3))

    table = [[index[compose(p, r)] for r in perms] for p in perms]
    return make_cayley_table(names, table)


def groups_up_to_order_6() -> dict[str, CayleyTable]:
    """Every group of order at most 6, keyed by a conventional name."""
    return {
        "C1": trivial_group(),
        "C2": cyclic_group(2),
        "C3": cyclic_group(3),
        "C4": cyclic_group(4),
        "K4": klein_four_group(),
        "C5": cyclic_group(5),
        "C6": cyclic_group(6),
        "S3": symmetric_group_3(),
    }
