"""Non-intersecting lattice paths (south/east steps) and the L-region path formula."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from . import exact
from .regions import LSpec, SpecError


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class PathSystem:
    starts: tuple[LatticePoint, ...]
    ends: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        if len(self.starts) != len(self.ends):
            raise ValueError(f"{len(self.starts)} starts but {len(self.ends)} ends")

    def __len__(self) -> int:
        return len(self.starts)


def pochhammer(a: int, k: int) -> int:
    """Rising factorial a(a+1)...(a+k-1)."""
    if a < 1:
        raise ValueError(f"pochhammer base must be positive, got {a}")
    if k < 0:
        raise ValueError("pochhammer length must be nonnegative")
    out = 1
    for t in range(a, a + k):
        out *= t
    return out


def path_count(p: Sequence[int], q: Sequence[int]) -> int:
    """Number of south/east lattice paths from ``p`` to ``q``."""
    east = q[0] - p[0]
    south = p[1] - q[1]
    if east < 0 or south < 0:
        return 0
    return exact.binom(east + south, east)


def lgv_count(sys: PathSystem) -> int:
    return exact.det([[path_count(s, e) for e in sys.ends] for s in sys.starts])


def hexagon_path_system(a: int, b: int, c: int) -> PathSystem:
    """``a`` paths whose non-intersecting families biject with tilings of hexagon(a, b, c)."""
    starts = tuple(LatticePoint(k, c + k) for k in range(1, a + 1))
    ends = tuple(LatticePoint(b + k, k) for k in range(1, a + 1))
    return PathSystem(starts, ends)


# -- L-regions ----------------------------------------------------------------

def _complement(n: int, s: frozenset[int]) -> frozenset[int]:
    return frozenset(range(1, n + 1)) - s


def u_classes(s: LSpec) -> Iterator[frozenset[int]]:
    """Admissible U (subsets of [n] minus (Q | R) of size |P| - |Q' & R|), lexicographic."""
    size = len(s.P) - len(_complement(s.n, s.Q) & s.R)
    if size < 0:
        return
    pool = sorted(set(range(1, s.n + 1)) - s.Q - s.R)
    for combo in itertools.combinations(pool, size):
        yield frozenset(combo)


def l_region_path_system(s: LSpec, U: frozenset[int]) -> tuple[PathSystem, PathSystem]:
    """The two path systems a U-class splits into (upper: from P, lower: to S)."""
    n, x = s.n, s.x
    qc, rc = _complement(n, s.Q), _complement(n, s.R)
    if U & (s.Q | s.R) or any(not 1 <= u <= n for u in U):
        raise SpecError(f"U={sorted(U)} must avoid Q | R and lie in [1, {n}]")
    if len(U) != len(s.P) - len(qc & s.R):
        raise SpecError(f"|U| must equal |P| - |Q' & R| = {len(s.P) - len(qc & s.R)}")
    diag_ends = sorted((qc & s.R) | U)
    diag_starts = sorted((s.Q & rc) | U)
    P, S = sorted(s.P), sorted(s.S)
    if s.barred:
        upper = PathSystem(
            tuple(LatticePoint(1, x + p) for p in P),
            tuple(LatticePoint(x + r, x + r) for r in diag_ends),
        )
        lower = PathSystem(
            tuple(LatticePoint(x + q, x + q) for q in diag_starts),
            tuple(LatticePoint(x + t, x + 1) for t in S),
        )
    else:
        upper = PathSystem(
            tuple(LatticePoint(x + 1, x + p) for p in P),
            tuple(LatticePoint(x + r, x + r) for r in diag_ends),
        )
        lower = PathSystem(
            tuple(LatticePoint(x + q, x + q) for q in diag_starts),
            tuple(LatticePoint(x + t, 1) for t in S),
        )
    return upper, lower


class NegativeSummand(ArithmeticError):
    pass


def l_summands(s: LSpec) -> list[tuple[frozenset[int], int, int]]:
    """Per-U factors ``(U, upper determinant, lower determinant)``."""
    out = []
    qc, rc = _complement(s.n, s.Q), _complement(s.n, s.R)
    k = len(s.P) - len(qc & s.R)
    if k < 0 or len(s.S) - len(s.Q & rc) != k:
        return out
    for U in u_classes(s):
        upper, lower = l_region_path_system(s, U)
        du, dl = lgv_count(upper), lgv_count(lower)
        if du < 0 or dl < 0:
            raise NegativeSummand(f"U={sorted(U)} gives determinants {du}, {dl}")
        out.append((U, du, dl))
    return out


@lru_cache(maxsize=None)
def count_L_lgv(s: LSpec) -> int:
    """Tilings of the L-region as a sum over U-classes of two path determinants.

    A spec naming one cell twice describes no region and counts 0.
    """
    if s.collides():
        return 0
    return sum(du * dl for _, du, dl in l_summands(s))


def ratio_rhs_L(s: LSpec) -> Fraction:
    x = s.x
    num = 1
    den = 1
    for p in s.P:
        num *= pochhammer(p, x)
    for q in s.Q:
        num *= pochhammer(q, x)
    for r in s.R:
        den *= pochhammer(r, x)
    for t in s.S:
        den *= pochhammer(t, x)
    return Fraction(num, den)


def factorization_check(p_list: Sequence[int], r_list: Sequence[int], x: int) -> bool:
    """det[C(x+p-1, x+r-1)] == prod (p)_x / prod (r)_x * det[C(p-1, r-1)], both sides exact."""
    if len(p_list) != len(r_list):
        raise ValueError("p_list and r_list must have equal length")
    shifted = exact.det([[exact.binom(x + p - 1, x + r - 1) for r in r_list] for p in p_list])
    plain = exact.det([[exact.binom(p - 1, r - 1) for r in r_list] for p in p_list])
    scale = Fraction(1)
    for p in p_list:
        scale *= pochhammer(p, x)
    for r in r_list:
        scale /= pochhammer(r, x)
    return Fraction(shifted) == scale * plain
