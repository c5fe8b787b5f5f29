"""Triangular-lattice geometry: unit triangles, lozenges, isometries, regions.

Embedding
---------
Lattice vertices are integer pairs ``(j, i)``.  The planar position of a
vertex is ``(j + i/2, i*sqrt(3)/2)``, so rows ``i = const`` are horizontal
lines, columns ``j = const`` are lines of slope +60 degrees and the
anti-diagonals ``i + j = const`` are lines of slope -60 degrees.

The unit triangle ``TriCell(i, j, UP)`` has vertices ``(j, i), (j+1, i),
(j, i+1)``; ``TriCell(i, j, DOWN)`` has vertices ``(j+1, i), (j, i+1),
(j+1, i+1)``.  Centroids are ``(j+1/3, i+1/3)`` and ``(j+2/3, i+2/3)``
respectively, which is how cells are recovered after an isometry.

All isometries act on these affine ``(j, i)`` coordinates with exact
:class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple


class Orient(enum.IntEnum):
    UP = 0
    DOWN = 1

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Orient":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"orientation must be 'up' or 'down', got {text!r}") from None


UP = Orient.UP
DOWN = Orient.DOWN


class TriCell(NamedTuple):
    """A unit triangle: row ``i``, position ``j`` within the row, orientation."""

    i: int
    j: int
    orient: Orient

    @property
    def is_up(self) -> bool:
        return self.orient == UP

    def centroid(self) -> tuple[Fraction, Fraction]:
        """Centroid in affine ``(j, i)`` lattice coordinates."""
        off = Fraction(1, 3) if self.orient == UP else Fraction(2, 3)
        return (self.j + off, self.i + off)

    def vertices(self) -> tuple[tuple[int, int], ...]:
        i, j = self.i, self.j
        if self.orient == UP:
            return ((j, i), (j + 1, i), (j, i + 1))
        return ((j + 1, i), (j, i + 1), (j + 1, i + 1))

    def __str__(self) -> str:
        return f"({self.i},{self.j},{self.orient})"


def up(j: int, i: int) -> TriCell:
    """Up-pointing cell with lower-left vertex ``(j, i)``."""
    return TriCell(i, j, UP)


def down(j: int, i: int) -> TriCell:
    """Down-pointing cell with lower vertex ``(j+1, i)``."""
    return TriCell(i, j, DOWN)


def cell_at_centroid(cj: Fraction, ci: Fraction) -> TriCell:
    fj, fi = cj - (cj.numerator // cj.denominator), ci - (ci.numerator // ci.denominator)
    bj, bi = int(cj - fj), int(ci - fi)
    if fj == fi == Fraction(1, 3):
        return TriCell(bi, bj, UP)
    if fj == fi == Fraction(2, 3):
        return TriCell(bi, bj, DOWN)
    raise ValueError(f"({cj}, {ci}) is not the centroid of a lattice cell")


def neighbors(c: TriCell) -> tuple[TriCell, TriCell, TriCell]:
    """The three cells sharing an edge with ``c``.

    Ordered by the shared edge: horizontal, +60 degree, -60 degree.
    """
    i, j = c.i, c.j
    if c.orient == UP:
        return (TriCell(i - 1, j, DOWN), TriCell(i, j - 1, DOWN), TriCell(i, j, DOWN))
    return (TriCell(i + 1, j, UP), TriCell(i, j + 1, UP), TriCell(i, j, UP))


def are_adjacent(a: TriCell, b: TriCell) -> bool:
    return b in neighbors(a)


class LozengeKind(enum.Enum):
    LEFT = "left"
    VERTICAL = "vertical"
    RIGHT = "right"


# shared-edge index (as ordered by ``neighbors``) -> kind.  A +60 degree shared
# edge leaves the rhombus leaning left; a -60 degree one leans right.
_KIND_BY_EDGE = (LozengeKind.VERTICAL, LozengeKind.LEFT, LozengeKind.RIGHT)


class InvalidLozenge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Lozenge:
    """Two adjacent cells; ``a`` is always the up cell."""

    a: TriCell
    b: TriCell
    kind: LozengeKind

    @property
    def cells(self) -> tuple[TriCell, TriCell]:
        return (self.a, self.b)

    def __contains__(self, c: object) -> bool:
        return c == self.a or c == self.b


def lozenge_of(a: TriCell, b: TriCell) -> Lozenge:
    if a.orient == DOWN:
        a, b = b, a
    if a.orient != UP or b.orient != DOWN:
        raise InvalidLozenge(f"{a} and {b} are not adjacent")
    try:
        k = neighbors(a).index(b)
    except ValueError:
        raise InvalidLozenge(f"{a} and {b} are not adjacent") from None
    return Lozenge(a, b, _KIND_BY_EDGE[k])


class Region:
    """An immutable finite set of unit triangles."""

    __slots__ = ("cells", "_hash")

    def __init__(self, cells: Iterable[TriCell] = ()):
        self.cells: frozenset[TriCell] = frozenset(cells)
        self._hash = hash(self.cells)

    def __iter__(self) -> Iterator[TriCell]:
        return iter(sorted(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, c: object) -> bool:
        return c in self.cells

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Region) and self.cells == other.cells

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Region({len(self.cells)} cells, up={self.up_count}, down={self.down_count})"

    def __sub__(self, other: "Region | Iterable[TriCell]") -> "Region":
        other_cells = other.cells if isinstance(other, Region) else frozenset(other)
        return Region(self.cells - other_cells)

    def __or__(self, other: "Region") -> "Region":
        return Region(self.cells | other.cells)

    @property
    def up_count(self) -> int:
        return sum(1 for c in self.cells if c.orient == UP)

    @property
    def down_count(self) -> int:
        return len(self.cells) - self.up_count

    def sorted_cells(self) -> list[TriCell]:
        return sorted(self.cells)

    def translate(self, dj: int, di: int) -> "Region":
        return Region(TriCell(c.i + di, c.j + dj, c.orient) for c in self.cells)

    def centroid(self) -> tuple[Fraction, Fraction]:
        """Mean of cell centroids; the only possible center of a rotation symmetry."""
        if not self.cells:
            return (Fraction(0), Fraction(0))
        sj = sum((c.centroid()[0] for c in self.cells), Fraction(0))
        si = sum((c.centroid()[1] for c in self.cells), Fraction(0))
        return (sj / len(self.cells), si / len(self.cells))

    def bounds(self) -> tuple[int, int, int, int]:
        """``(i_min, i_max, j_min, j_max)`` over the cells."""
        iis = [c.i for c in self.cells]
        jjs = [c.j for c in self.cells]
        return (min(iis), max(iis), min(jjs), max(jjs))


def is_balanced(r: Region) -> bool:
    return r.up_count == r.down_count


# -- isometries -------------------------------------------------------------

class IsometryKind(enum.Enum):
    IDENTITY = "identity"
    ROTATE120 = "rotate120"
    ROTATE180 = "rotate180"
    ROTATE240 = "rotate240"
    REFLECT_VERTICAL = "reflect_vertical"


class IncompatibleCenter(ValueError):
    pass


Point = tuple[Fraction, Fraction]


def _linear(kind: IsometryKind, u: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
    # linear part in (j, i) coordinates; rotations are counterclockwise
    if kind is IsometryKind.IDENTITY:
        return (u, v)
    if kind is IsometryKind.ROTATE120:
        return (-u - v, u)
    if kind is IsometryKind.ROTATE240:
        return (v, -u - v)
    if kind is IsometryKind.ROTATE180:
        return (-u, -v)
    return (-u - v, v)  # reflect_vertical through the origin's vertical line


@dataclass(frozen=True)
class Isometry:
    """A lattice isometry fixing ``center`` (affine ``(j, i)`` coordinates).

    For ``REFLECT_VERTICAL`` the axis is the vertical line through ``center``.
    """

    kind: IsometryKind
    center: Point = (Fraction(0), Fraction(0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", (Fraction(self.center[0]), Fraction(self.center[1])))
        tj, ti = self.translation
        if tj.denominator != 1 or ti.denominator != 1:
            raise IncompatibleCenter(f"{self.kind.value} about {self.center} does not preserve the lattice")

    @property
    def translation(self) -> Point:
        cj, ci = self.center
        lj, li = _linear(self.kind, cj, ci)
        return (cj - lj, ci - li)

    def point(self, p: Point) -> Point:
        lj, li = _linear(self.kind, Fraction(p[0]), Fraction(p[1]))
        tj, ti = self.translation
        return (lj + tj, li + ti)

    def cell(self, c: TriCell) -> TriCell:
        return cell_at_centroid(*self.point(c.centroid()))

    def lozenge(self, lz: Lozenge) -> Lozenge:
        return lozenge_of(self.cell(lz.a), self.cell(lz.b))


IDENTITY = Isometry(IsometryKind.IDENTITY)


def apply_isometry(m: Isometry, r: Region) -> Region:
    return Region(m.cell(c) for c in r.cells)


def rotation_about_centroid(r: Region, kind: IsometryKind = IsometryKind.ROTATE120) -> Isometry:
    """Rotation about the region's centroid; raises if it is not a lattice symmetry center."""
    return Isometry(kind, r.centroid())


def vertical_axis_reflection(r: Region) -> Isometry:
    """Reflection across the vertical line through the region's centroid."""
    cj, ci = r.centroid()
    # Only the planar abscissa cj + ci/2 matters; move the point onto row 0.
    return Isometry(IsometryKind.REFLECT_VERTICAL, (cj + ci / 2, Fraction(0)))


def is_invariant(r: Region, m: Isometry) -> bool:
    try:
        return apply_isometry(m, r) == r
    except ValueError:
        return False


def planar(p: tuple[Fraction | int, Fraction | int]) -> tuple[float, float]:
    """Planar (x, y) of an affine lattice point, y pointing up."""
    j, i = p
    return (float(j) + float(i) / 2.0, float(i) * 3 ** 0.5 / 2.0)
