"""Builders for hexagons, snowflake regions, L-regions and their flipped forms.

Coordinates follow :mod:`lozenge.lattice`.  The central triangle of the
unflipped snowflake ``H(n, x)`` has vertices ``L = (0, 0)``, ``R = (x, 0)``
and ``U = (0, x)`` (affine ``(j, i)``), so the three long diagonals are the
lines ``i = 0`` (horizontal), ``j = 0`` (positive) and ``i + j = x``
(negative).  The boundary hexagon is ``-n <= j, i, i + j <= n + x``.

Hole cells at label ``k`` (``(j, i)`` of the cell, see ``lattice.up``/``down``)::

    set  arm          unflipped             flipped
    A1   U -> top-left    down(-k, x+k-1)   down(-k, k-1)
    B1   U -> top-right   down(-1, x+k-1)   down(x-1, k-1)
    A2   U -> top-right   up(0, x+k-1)      up(x, k-1)
    B2   R -> right       up(x+k-1, 0)      up(x+k-1, 0)
    A3   R -> right       down(x+k-1, -1)   down(x+k-1, -1)
    B3   R -> bot-right   down(x+k-1, -k)   down(x+k-1, -x-k)
    A4   R -> bot-right   up(x+k-1, -k)     up(x+k-1, -x-k)
    B4   L -> bot-left    up(0, -k)         up(x, -x-k)
    A5   L -> bot-left    down(-1, -k)      down(x-1, -x-k)
    B5   L -> left        down(-k, -1)      down(-k, -1)
    A6   L -> left        up(-k, 0)         up(-k, 0)
    B6   U -> top-left    up(-k, x+k-1)     up(-k, k-1)

Odd-indexed sets sit in the three triangular sectors and point down; even
ones sit in the trapezoids and point up.  Flipping translates the positive
dendrite by ``(x, -x)`` and the negative one by ``(0, -x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Sequence

from .lattice import (
    DOWN,
    UP,
    Isometry,
    IsometryKind,
    Lozenge,
    Region,
    TriCell,
    down,
    lozenge_of,
    neighbors,
    up,
)


class SpecError(ValueError):
    """A region specification violates its preconditions."""


Labels = frozenset[int]


def _labels(values: Iterable[int]) -> Labels:
    out = frozenset(int(v) for v in values)
    return out


def _check_labels(name: str, labels: Labels, n: int) -> None:
    bad = sorted(v for v in labels if not 1 <= v <= n)
    if bad:
        raise SpecError(f"{name} has labels {bad} outside [1, {n}]")


# -- cell sets of convex lattice polygons ---------------------------------

def _slab(
    j: tuple[int | None, int | None] = (None, None),
    i: tuple[int | None, int | None] = (None, None),
    s: tuple[int | None, int | None] = (None, None),
) -> set[TriCell]:
    """Cells whose centroid satisfies the given closed bounds on j, i and i + j.

    At least two of the three coordinates must be bounded on both sides.
    """
    def inside(lo: int | None, hi: int | None, v3: int) -> bool:
        return (lo is None or 3 * lo <= v3) and (hi is None or v3 <= 3 * hi)

    if i[0] is not None and i[1] is not None:
        i_range = range(i[0] - 1, i[1] + 1)
        if j[0] is not None and j[1] is not None:
            j_of = lambda ii: range(j[0] - 1, j[1] + 1)
        else:
            j_of = lambda ii: range(s[0] - ii - 2, s[1] - ii + 1)
    else:
        i_range = range(s[0] - j[1] - 2, s[1] - j[0] + 1)
        j_of = lambda ii: range(j[0] - 1, j[1] + 1)

    out = set()
    for ii in i_range:
        for jj in j_of(ii):
            for orient, off in ((UP, 1), (DOWN, 2)):
                cj, ci = 3 * jj + off, 3 * ii + off
                if inside(*j, cj) and inside(*i, ci) and inside(*s, cj + ci):
                    out.add(TriCell(ii, jj, orient))
    return out


def build_hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with sides a, b, c, a, b, c clockwise from the top."""
    if min(a, b, c) < 0:
        raise SpecError("side lengths must be nonnegative")
    return Region(_slab(j=(-b, a), i=(0, b + c), s=(0, a + c)))


def central_triangle(n: int, x: int, flipped: bool = False) -> set[TriCell]:
    if x == 0:
        return set()
    if flipped:
        return _slab(j=(0, x), i=(-x, 0), s=(0, None))
    return _slab(j=(0, x), i=(0, x), s=(None, x))


def _frame(n: int, x: int, flipped: bool) -> set[TriCell]:
    if flipped:
        return _slab(j=(-n, x + n), i=(-x - n, n), s=(-n, x + n))
    return _slab(j=(-n, x + n), i=(-n, x + n), s=(-n, x + n))


def build_H(n: int, x: int, flipped: bool = False) -> Region:
    """Hexagon with alternating sides n, n+x minus the central triangle of side x.

    ``flipped`` gives the hexagon with sides n+x, n, ... and a down-pointing hole.
    """
    if n < 0 or x < 0:
        raise SpecError("n and x must be nonnegative")
    return Region(_frame(n, x, flipped) - central_triangle(n, x, flipped))


# -- hole tables ------------------------------------------------------------

_H_HOLES: dict[str, Callable[[int, int], TriCell]] = {
    "A1": lambda x, k: down(-k, x + k - 1),
    "B1": lambda x, k: down(-1, x + k - 1),
    "A2": lambda x, k: up(0, x + k - 1),
    "B2": lambda x, k: up(x + k - 1, 0),
    "A3": lambda x, k: down(x + k - 1, -1),
    "B3": lambda x, k: down(x + k - 1, -k),
    "A4": lambda x, k: up(x + k - 1, -k),
    "B4": lambda x, k: up(0, -k),
    "A5": lambda x, k: down(-1, -k),
    "B5": lambda x, k: down(-k, -1),
    "A6": lambda x, k: up(-k, 0),
    "B6": lambda x, k: up(-k, x + k - 1),
}

_HBAR_HOLES: dict[str, Callable[[int, int], TriCell]] = {
    "A1": lambda x, k: down(-k, k - 1),
    "B1": lambda x, k: down(x - 1, k - 1),
    "A2": lambda x, k: up(x, k - 1),
    "B2": lambda x, k: up(x + k - 1, 0),
    "A3": lambda x, k: down(x + k - 1, -1),
    "B3": lambda x, k: down(x + k - 1, -x - k),
    "A4": lambda x, k: up(x + k - 1, -x - k),
    "B4": lambda x, k: up(x, -x - k),
    "A5": lambda x, k: down(x - 1, -x - k),
    "B5": lambda x, k: down(-k, -1),
    "A6": lambda x, k: up(-k, 0),
    "B6": lambda x, k: up(-k, k - 1),
}

# which long diagonal each hole family hangs on
DENDRITE_OF = {
    "A3": "horizontal", "A6": "horizontal", "B2": "horizontal", "B5": "horizontal",
    "A2": "positive", "A5": "positive", "B1": "positive", "B4": "positive",
    "A1": "negative", "A4": "negative", "B3": "negative", "B6": "negative",
}


@dataclass(frozen=True)
class SnowflakeSpec:
    """``H_{n,x}(A, B)`` or, with ``flipped``, its snowflake flip.

    ``hole_shift`` moves every hole outward by that many labels when the
    region is built.  It exists only to construct negative controls.
    """

    n: int
    x: int
    A: tuple[Labels, ...] = field(default_factory=lambda: (frozenset(),) * 6)
    B: tuple[Labels, ...] = field(default_factory=lambda: (frozenset(),) * 6)
    flipped: bool = False
    hole_shift: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.x < 0:
            raise SpecError("n and x must be nonnegative")
        if len(self.A) != 6 or len(self.B) != 6:
            raise SpecError("A and B must each hold six label sets")
        object.__setattr__(self, "A", tuple(_labels(a) for a in self.A))
        object.__setattr__(self, "B", tuple(_labels(b) for b in self.B))
        for idx in range(6):
            _check_labels(f"A{idx + 1}", self.A[idx], self.n)
            _check_labels(f"B{idx + 1}", self.B[idx], self.n)
        if self.flipped and not self.flippable():
            raise SpecError("snowflake flipping requires 1 not in A_i & B_i for every i")

    def flippable(self) -> bool:
        return all(1 not in (a & b) for a, b in zip(self.A, self.B))

    def sets(self) -> dict[str, Labels]:
        out = {}
        for idx in range(6):
            out[f"A{idx + 1}"] = self.A[idx]
            out[f"B{idx + 1}"] = self.B[idx]
        return out

    def is_cyclic(self) -> bool:
        A, B = self.A, self.B
        return A[0] == A[2] == A[4] and A[1] == A[3] == A[5] and B[0] == B[2] == B[4] and B[1] == B[3] == B[5]

    def is_vertical(self) -> bool:
        """Label-level mirror condition; region-level checks live in ``theorem``."""
        A, B = self.A, self.B
        return B[0] == A[0] and B[2] == A[4] and B[4] == A[2] and B[1] == A[5] and B[3] == A[3] and B[5] == A[1]

    @property
    def odd_count(self) -> int:
        return sum(len(self.A[k]) + len(self.B[k]) for k in (0, 2, 4))

    @property
    def even_count(self) -> int:
        return sum(len(self.A[k]) + len(self.B[k]) for k in (1, 3, 5))


def flip_spec(s: SnowflakeSpec) -> SnowflakeSpec:
    if not s.flippable():
        raise SpecError("snowflake flipping requires 1 not in A_i & B_i for every i")
    return replace(s, flipped=not s.flipped)


def hole_cells(s: SnowflakeSpec) -> dict[TriCell, tuple[str, int]]:
    """Map each hole cell to its (family, label); raises on a doubly named cell."""
    table = _HBAR_HOLES if s.flipped else _H_HOLES
    out: dict[TriCell, tuple[str, int]] = {}
    for name, labels in sorted(s.sets().items()):
        for k in sorted(labels):
            c = table[name](s.x, k + s.hole_shift)
            if c in out:
                other = out[c]
                raise SpecError(f"{name} label {k} and {other[0]} label {other[1]} name the same cell")
            out[c] = (name, k)
    return out


def canonical_spec(s: SnowflakeSpec) -> SnowflakeSpec:
    """Respell label 1 of ``B_k`` as label 1 of ``A_k`` when both name one cell on either side.

    Only happens at ``x = 0``.  Both spellings build the same pair of regions,
    so symmetry tests on the sets should see the canonical one.
    """
    A, B = list(s.A), list(s.B)
    for k in range(6):
        name_a, name_b = f"A{k + 1}", f"B{k + 1}"
        shared = all(t[name_a](s.x, 1) == t[name_b](s.x, 1) for t in (_H_HOLES, _HBAR_HOLES))
        if shared and 1 in B[k]:
            A[k], B[k] = A[k] | {1}, B[k] - {1}
    return replace(s, A=tuple(A), B=tuple(B))


def build_snowflake(s: SnowflakeSpec) -> Region:
    base = build_H(s.n, s.x, s.flipped)
    holes = hole_cells(s)
    missing = [c for c in holes if c not in base]
    if missing:
        raise SpecError(f"hole cells {sorted(missing)} fall outside the hexagon")
    return base - holes.keys()


def rotation_center(n: int, x: int, flipped: bool = False) -> tuple:
    """Centroid of the central triangle (the rotation center of the snowflake)."""
    from fractions import Fraction

    if flipped:
        return (Fraction(2 * x, 3), Fraction(-x, 3))
    return (Fraction(x, 3), Fraction(x, 3))


def snowflake_rotation(n: int, x: int, flipped: bool = False, kind=IsometryKind.ROTATE120) -> Isometry:
    return Isometry(kind, rotation_center(n, x, flipped))


def snowflake_reflection(n: int, x: int, flipped: bool = False) -> Isometry:
    """Reflection across the vertical line through the central triangle's apex."""
    from fractions import Fraction

    # both central triangles are symmetric about planar abscissa x/2
    return Isometry(IsometryKind.REFLECT_VERTICAL, (Fraction(x, 2), Fraction(0)))


def half_turn(x: int) -> Isometry:
    """The half-turn carrying the flipped central triangle onto the unflipped one."""
    from fractions import Fraction

    return Isometry(IsometryKind.ROTATE180, (Fraction(x, 2), Fraction(0)))


def conjugate_half_turn(s: SnowflakeSpec) -> SnowflakeSpec:
    """The unflipped spec whose region is the half-turn image of ``build_snowflake(flip(s))``."""
    A = tuple(s.A[(k + 3) % 6] for k in range(6))
    B = tuple(s.B[(k + 3) % 6] for k in range(6))
    return SnowflakeSpec(s.n, s.x, A, B, flipped=False)


# -- dendrites --------------------------------------------------------------

@dataclass(frozen=True)
class Dendrite:
    axis: str
    holes: frozenset[tuple[int, str, str]]  # (label, family, orientation)


def dendrites(s: SnowflakeSpec) -> tuple[Dendrite, Dendrite, Dendrite]:
    out = []
    for axis in ("horizontal", "positive", "negative"):
        holes = set()
        for name, labels in s.sets().items():
            if DENDRITE_OF[name] == axis:
                orient = "down" if int(name[1]) % 2 else "up"
                holes.update((k, name, orient) for k in labels)
        out.append(Dendrite(axis, frozenset(holes)))
    return tuple(out)


# -- L-regions ----------------------------------------------------------------

_L_HOLES = {
    False: {
        "P": lambda x, k: down(-k, x + k - 1),
        "Q": lambda x, k: down(-1, x + k - 1),
        "R": lambda x, k: up(0, x + k - 1),
        "S": lambda x, k: up(x + k - 1, 0),
    },
    True: {
        "P": lambda x, k: down(-k, k - 1),
        "Q": lambda x, k: down(x - 1, k - 1),
        "R": lambda x, k: up(x, k - 1),
        "S": lambda x, k: up(x + k - 1, 0),
    },
}


@dataclass(frozen=True)
class LSpec:
    """``L_{n,x}(P, Q, R, S)``, or the barred region when ``barred``."""

    n: int
    x: int
    P: Labels = frozenset()
    Q: Labels = frozenset()
    R: Labels = frozenset()
    S: Labels = frozenset()
    barred: bool = False

    def __post_init__(self) -> None:
        if self.n < 0 or self.x < 0:
            raise SpecError("n and x must be nonnegative")
        for name in "PQRS":
            value = _labels(getattr(self, name))
            object.__setattr__(self, name, value)
            _check_labels(name, value, self.n)

    def lemma_hypothesis(self) -> bool:
        return 1 not in (self.P & self.Q) and 1 not in (self.R & self.S)

    def bar(self, barred: bool = True) -> "LSpec":
        return replace(self, barred=barred)

    def hole_cells(self) -> dict[TriCell, tuple[str, int]]:
        table = _L_HOLES[self.barred]
        out: dict[TriCell, tuple[str, int]] = {}
        for name in "PQRS":
            for k in sorted(getattr(self, name)):
                c = table[name](self.x, k)
                if c in out:
                    raise SpecError(f"{name} label {k} and {out[c][0]} label {out[c][1]} name the same cell")
                out[c] = (name, k)
        return out

    def collides(self) -> bool:
        try:
            self.hole_cells()
        except SpecError:
            return True
        return False


def l_frame(n: int, x: int, barred: bool = False) -> Region:
    if barred:
        return Region(_slab(i=(0, n), s=(0, x + n)))
    return Region(_slab(i=(0, x + n), s=(x, x + n)))


def build_L(s: LSpec) -> Region:
    """The L-region: parallelogram split by the column j = 0 (j = x when barred)."""
    return l_frame(s.n, s.x, s.barred) - s.hole_cells().keys()


# -- decomposition along the three W segments ----------------------------

WTriple = tuple[Labels, Labels, Labels]


def _check_w(s: SnowflakeSpec, W: Sequence[Iterable[int]]) -> WTriple:
    if len(W) != 3:
        raise SpecError("W must be a triple (W2, W4, W6)")
    Wt = tuple(_labels(w) for w in W)
    for idx, w in enumerate(Wt):
        _check_labels(f"W{2 * idx + 2}", w, s.n)
        # W_{2i} avoids A_{2i+1} and B_{2i}; A7 is A1
        blocked = s.A[(2 * idx + 2) % 6] | s.B[2 * idx + 1]
        if w & blocked:
            raise SpecError(f"W{2 * idx + 2} meets A{(2 * idx + 2) % 6 + 1} | B{2 * idx + 2}")
    return Wt  # type: ignore[return-value]


def with_w_holes(s: SnowflakeSpec, W: Sequence[Iterable[int]]) -> SnowflakeSpec:
    """``H(A_W, B^W)``: the snowflake with the W lozenges cut out as holes."""
    W2, W4, W6 = _check_w(s, W)
    A = list(s.A)
    B = list(s.B)
    A[0], A[2], A[4] = A[0] | W6, A[2] | W2, A[4] | W4
    B[1], B[3], B[5] = B[1] | W2, B[3] | W4, B[5] | W6
    # bypass the flipping check: W-holes may legitimately contain label 1
    spec = SnowflakeSpec(s.n, s.x, tuple(A), tuple(B), False, s.hole_shift)
    object.__setattr__(spec, "flipped", s.flipped)
    return spec


def decompose_H_into_L(s: SnowflakeSpec, W: Sequence[Iterable[int]]) -> tuple[LSpec, LSpec, LSpec]:
    """The three L-specs ``L(A_{2i-1} | W_{2i-2}, B_{2i-1}, A_{2i}, B_{2i} | W_{2i})``."""
    W2, W4, W6 = _check_w(s, W)
    Ws = {0: W6, 2: W2, 4: W4, 6: W6}
    out = []
    for i in (1, 2, 3):
        out.append(
            LSpec(
                s.n,
                s.x,
                P=s.A[2 * i - 2] | Ws[2 * i - 2],
                Q=s.B[2 * i - 2],
                R=s.A[2 * i - 1],
                S=s.B[2 * i - 1] | Ws[2 * i],
                barred=s.flipped,
            )
        )
    return tuple(out)  # type: ignore[return-value]


def admissible_W(s: SnowflakeSpec) -> Iterator[WTriple]:
    """All triples with ``W_{2i}`` disjoint from ``A_{2i+1} | B_{2i}``, in lexicographic order."""
    pools = []
    for idx in range(3):
        free = sorted(set(range(1, s.n + 1)) - s.A[(2 * idx + 2) % 6] - s.B[2 * idx + 1])
        pools.append([frozenset(c) for r in range(len(free) + 1) for c in itertools.combinations(free, r)])
    yield from itertools.product(*pools)


def sector_of(c: TriCell, x: int, flipped: bool = False) -> int:
    """Index 0, 1, 2 of the L-part containing ``c`` (cells of the central triangle give -1)."""
    cj, ci = c.centroid()
    cs = cj + ci
    if flipped:
        if ci > 0 and cs > 0:
            return 0
        if ci < 0 and cj > x:
            return 1
        if cj < x and cs < 0:
            return 2
        return -1
    if ci > 0 and cs > x:
        return 0
    if ci < 0 and cj > 0:
        return 1
    if cj < 0 and cs < x:
        return 2
    return -1


def split_snowflake(s: SnowflakeSpec, W: Sequence[Iterable[int]]) -> tuple[Region, Region, Region]:
    """Cut ``H(A_W, B^W)`` along the three W segments into its L-parts."""
    region = build_snowflake(with_w_holes(s, W))
    parts: list[set[TriCell]] = [set(), set(), set()]
    for c in region.cells:
        parts[sector_of(c, s.x, s.flipped)].add(c)
    return tuple(Region(p) for p in parts)  # type: ignore[return-value]


def w_of_tiling(s: SnowflakeSpec, tiling: Iterable[Lozenge]) -> WTriple:
    """The labels of the W segments crossed by lozenges of ``tiling``."""
    table = _HBAR_HOLES if s.flipped else _H_HOLES
    found: list[set[int]] = [set(), set(), set()]
    families = (("B2", "A3"), ("B4", "A5"), ("B6", "A1"))
    tiles = set(tiling)
    for idx, (fa, fb) in enumerate(families):
        for k in range(1, s.n + 1):
            ca, cb = table[fa](s.x, k), table[fb](s.x, k)
            if lozenge_of(ca, cb) in tiles:
                found[idx].add(k)
    return tuple(frozenset(f) for f in found)  # type: ignore[return-value]


# -- forced lozenges ------------------------------------------------------

class Untileable(ValueError):
    pass


def forced_lozenges(r: Region, count: Callable[[Region], int] | None = None) -> set[Lozenge]:
    """Lozenges contained in every tiling of ``r``."""
    if count is None:
        from .counting import count_determinant as count
    total = count(r)
    if total == 0:
        raise Untileable("region has no lozenge tiling")
    out = set()
    for c in r.cells:
        if c.orient != UP:
            continue
        for d in neighbors(c):
            if d in r and count(r - (c, d)) == total:
                out.add(lozenge_of(c, d))
    return out


def remove_lozenges(r: Region, lozenges: Iterable[Lozenge]) -> Region:
    return r - [c for lz in lozenges for c in lz.cells]
