"""Transformations of finite point sets and row/column map pairs.

Everything in this library lives inside a product of two full transformation
monoids with opposite composition conventions: a row map written on the left
of its argument (products compose right-to-left) and a column map written on
the right (products compose left-to-right).  The constant pairs form a
rectangular band which is the unique minimal ideal of the product monoid.

Points are 1-based throughout, matching the usual tabular notation for
transformations.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Transformation",
    "RowColMap",
    "constant_element",
    "rect_band",
    "rect_band_coords",
]


@dataclass(frozen=True)
class Transformation:
    """A total map on the points 1..degree, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        for x in self.images:
            if not 1 <= x <= n:
                raise ValueError(f"image {x} out of range 1..{n}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __lt__(self, other: "Transformation") -> bool:
        return (self.degree, self.images) < (other.degree, other.images)

    @staticmethod
    def identity(degree: int) -> "Transformation":
        return Transformation(tuple(range(1, degree + 1)))

    @staticmethod
    def constant(value: int, degree: int) -> "Transformation":
        if not 1 <= value <= degree:
            raise ValueError(f"constant value {value} out of range 1..{degree}")
        return Transformation((value,) * degree)

    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def is_idempotent(self) -> bool:
        return all(self.images[y - 1] == y for y in self.images)

    def after(self, other: "Transformation") -> "Transformation":
        """The composite applying ``other`` first: result(x) = self(other(x))."""
        if other.degree != self.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        return Transformation(tuple(self.images[y - 1] for y in other.images))

    def then(self, other: "Transformation") -> "Transformation":
        """The composite applying ``self`` first: x(result) = (x self) other."""
        return other.after(self)


@dataclass(frozen=True)
class RowColMap:
    """An element of the ambient monoid: a row map paired with a column map.

    The row map acts on the left (so products compose its factors right to
    left) and the column map acts on the right (products compose left to
    right).  Multiplication is componentwise with those two conventions.
    """

    left: Transformation
    right: Transformation

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.left.degree, self.right.degree)

    def __mul__(self, other: "RowColMap") -> "RowColMap":
        return RowColMap(self.left.after(other.left), self.right.then(other.right))

    def is_idempotent(self) -> bool:
        return self * self == self


def constant_element(i: int, j: int, ambient: tuple[int, int]) -> RowColMap:
    """The constant pair sending every row to ``i`` and every column to ``j``."""
    rows, cols = ambient
    return RowColMap(
        Transformation.constant(i, rows), Transformation.constant(j, cols)
    )


def rect_band_coords(a: RowColMap) -> tuple[int, int] | None:
    """Coordinates (i, j) if ``a`` is a constant pair, else None."""
    if a.left.is_constant() and a.right.is_constant():
        return (a.left.images[0], a.right.images[0])
    return None


def rect_band(ambient: tuple[int, int]) -> list[RowColMap]:
    """All constant pairs of the ambient, in row-major order."""
    rows, cols = ambient
    return [
        constant_element(i, j, ambient)
        for i in range(1, rows + 1)
        for j in range(1, cols + 1)
    ]
