"""Exact tiling counts: backtracking enumeration and a signed bipartite determinant.

The two backends share nothing but the region's cell set, so each checks the
other.  Symmetry-class counts enumerate tilings built from whole orbits of
lozenges under the symmetry group.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import exact
from .lattice import (
    DOWN,
    UP,
    Isometry,
    IsometryKind,
    Lozenge,
    Region,
    TriCell,
    apply_isometry,
    lozenge_of,
    neighbors,
)

Tiling = frozenset[Lozenge]


def _index(r: Region) -> tuple[list[TriCell], list[list[int]]]:
    cells = r.sorted_cells()
    pos = {c: k for k, c in enumerate(cells)}
    # only later cells can partner the least uncovered one
    later = [[pos[d] for d in neighbors(c) if d in pos and pos[d] > k] for k, c in enumerate(cells)]
    for lst in later:
        lst.sort()
    return cells, later


def enumerate_tilings(r: Region, cap: int | None = None) -> Iterator[Tiling]:
    """Yield every tiling once, branching on the least uncovered cell.

    Cells are ordered by ``(i, j, orient)`` and partners are tried in that
    order too, so the output order is deterministic.
    """
    if cap is not None and cap <= 0:
        return
    cells, later = _index(r)
    n = len(cells)
    covered = [False] * n
    chosen: list[tuple[int, int]] = []
    emitted = 0

    def rec(k: int) -> Iterator[Tiling]:
        while k < n and covered[k]:
            k += 1
        if k == n:
            yield frozenset(lozenge_of(cells[a], cells[b]) for a, b in chosen)
            return
        covered[k] = True
        for m in later[k]:
            if not covered[m]:
                covered[m] = True
                chosen.append((k, m))
                yield from rec(k + 1)
                chosen.pop()
                covered[m] = False
        covered[k] = False

    if len(cells) % 2:
        return
    for t in rec(0):
        yield t
        emitted += 1
        if cap is not None and emitted >= cap:
            return


def count_enumeration(r: Region) -> int:
    """Number of tilings by exhaustive search over the same branching as ``enumerate_tilings``.

    Sub-searches are memoised on the covered-cell bitmask, which only
    collapses identical subtrees and does not change what is explored.
    """
    cells, later = _index(r)
    n = len(cells)
    if n % 2 or r.up_count != r.down_count:
        return 0
    full = (1 << n) - 1
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask == full:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        k = (~mask & (mask + 1)).bit_length() - 1  # least uncovered cell
        total = 0
        base = mask | (1 << k)
        for m in later[k]:
            bit = 1 << m
            if not base & bit:
                total += rec(base | bit)
        memo[mask] = total
        return total

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        return rec(0)
    finally:
        sys.setrecursionlimit(limit)


# -- determinant backend ----------------------------------------------------

def kasteleyn_signs(r: Region) -> dict[tuple[TriCell, TriCell], int]:
    """Edge signs (up cell, down cell) -> +-1 making |det| count perfect matchings.

    On the full triangular lattice all-plus signs are flat: every hexagonal
    face of the dual honeycomb has length 6.  Each lattice cell missing from
    the bounding window of ``r`` casts a horizontal ray to the right (drawn
    just above its centroid) and flips every edge it crosses.  A cycle then
    picks up one factor -1 per missing cell it encloses, which restores the
    flat condition for every cycle of the region's adjacency graph.

    Rays from missing up cells cross the two upper edges of each up cell to
    their right in the same row; rays from missing down cells cross the
    vertical edges between row i and row i+1 to their right.
    """
    if not r.cells:
        return {}
    i_min, i_max, j_min, j_max = r.bounds()
    lo = j_min - 2
    signs: dict[tuple[TriCell, TriCell], int] = {}
    for i in range(i_min, i_max + 1):
        missing_up = 0
        missing_down_below = 0
        for j in range(lo, j_max + 2):
            c = TriCell(i, j, UP)
            if c in r:
                s_row = -1 if missing_up % 2 else 1
                s_vert = -1 if missing_down_below % 2 else 1
                d_vert, d_left, d_right = neighbors(c)
                if d_vert in r:
                    signs[(c, d_vert)] = s_vert
                if d_left in r:
                    signs[(c, d_left)] = s_row
                if d_right in r:
                    signs[(c, d_right)] = s_row
            else:
                missing_up += 1
            if TriCell(i - 1, j, DOWN) not in r:
                missing_down_below += 1
    return signs


class SignAssignmentError(RuntimeError):
    pass


def signed_matrix(r: Region) -> list[list[int]]:
    ups = sorted(c for c in r.cells if c.orient == UP)
    downs = sorted(c for c in r.cells if c.orient == DOWN)
    col = {d: k for k, d in enumerate(downs)}
    signs = kasteleyn_signs(r)
    m = [[0] * len(downs) for _ in ups]
    for row, c in enumerate(ups):
        for d in neighbors(c):
            if d in col:
                try:
                    m[row][col[d]] = signs[(c, d)]
                except KeyError:
                    raise SignAssignmentError(f"no sign for edge {c}-{d}") from None
    return m


def count_determinant(r: Region) -> int:
    if r.up_count != r.down_count:
        return 0
    return abs(exact.det(signed_matrix(r)))


def count(r: Region) -> int:
    """Default tiling count (determinant backend)."""
    return count_determinant(r)


# -- symmetry classes -------------------------------------------------------

class SymmetryTag(enum.Enum):
    PLAIN = "plain"
    R = "r"
    V = "v"
    RV = "rv"


@dataclass(frozen=True)
class SymmetryClass:
    """Tilings fixed by the group generated by ``rotation`` and/or ``reflection``."""

    tag: SymmetryTag
    rotation: Isometry | None = None
    reflection: Isometry | None = None

    def __post_init__(self) -> None:
        need_rot = self.tag in (SymmetryTag.R, SymmetryTag.RV)
        need_ref = self.tag in (SymmetryTag.V, SymmetryTag.RV)
        if need_rot and (self.rotation is None or self.rotation.kind is not IsometryKind.ROTATE120):
            raise ValueError(f"class {self.tag.value} needs a 120 degree rotation")
        if need_ref and (self.reflection is None or self.reflection.kind is not IsometryKind.REFLECT_VERTICAL):
            raise ValueError(f"class {self.tag.value} needs a vertical reflection")
        if self.tag is SymmetryTag.RV:
            rc = self.rotation.center
            fc = self.reflection.center
            if rc[0] + rc[1] / 2 != fc[0] + fc[1] / 2:
                raise ValueError("reflection axis must pass through the rotation center")

    def group(self) -> list[Isometry]:
        """All group elements, identity first."""
        gens: list[Isometry] = []
        if self.tag in (SymmetryTag.R, SymmetryTag.RV):
            gens.append(self.rotation)
        if self.tag in (SymmetryTag.V, SymmetryTag.RV):
            gens.append(self.reflection)
        return gens


PLAIN = SymmetryClass(SymmetryTag.PLAIN)


class NotInvariant(ValueError):
    pass


def _orbit_maps(c: SymmetryClass):
    """Cell maps of every nontrivial group element, as composed callables."""
    gens = c.group()
    maps = []
    if c.tag is SymmetryTag.R:
        rot = gens[0]
        maps = [rot.cell, lambda t: rot.cell(rot.cell(t))]
    elif c.tag is SymmetryTag.V:
        maps = [gens[0].cell]
    elif c.tag is SymmetryTag.RV:
        rot, ref = gens
        r2 = lambda t: rot.cell(rot.cell(t))
        maps = [rot.cell, r2, ref.cell, lambda t: ref.cell(rot.cell(t)), lambda t: ref.cell(r2(t))]
    return maps


def _check_invariant(r: Region, c: SymmetryClass) -> None:
    for g in c.group():
        try:
            image = apply_isometry(g, r)
        except ValueError as exc:
            raise NotInvariant(str(exc)) from None
        if image != r:
            raise NotInvariant(f"region is not invariant under {g.kind.value}")


def count_symmetric(r: Region, c: SymmetryClass = PLAIN) -> int:
    """Number of tilings fixed by every element of the class's group.

    Searches over whole orbits: the least uncovered cell is matched to a
    neighbour and every image of that lozenge is placed at once.
    """
    if c.tag is SymmetryTag.PLAIN:
        return count_enumeration(r)
    _check_invariant(r, c)
    cells = r.sorted_cells()
    pos = {t: k for k, t in enumerate(cells)}
    maps = _orbit_maps(c)
    n = len(cells)
    if n % 2:
        return 0

    # orbit masks of the lozenges each cell can start; orbits that overlap themselves are dropped
    options: list[list[int]] = []
    for k, t in enumerate(cells):
        opts = []
        for d in neighbors(t):
            m = pos.get(d)
            if m is None or m < k:
                continue
            lz = lozenge_of(t, d)
            images = {lz} | {lozenge_of(f(lz.a), f(lz.b)) for f in maps}
            used: set[int] = set()
            ok = True
            for im in images:
                ka, kb = pos[im.a], pos[im.b]
                if ka in used or kb in used:
                    ok = False
                    break
                used.update((ka, kb))
            if ok:
                mask = 0
                for q in used:
                    mask |= 1 << q
                opts.append(mask)
        options.append(opts)

    full = (1 << n) - 1
    memo: dict[int, int] = {}

    def rec(mask: int) -> int:
        if mask == full:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        k = (~mask & (mask + 1)).bit_length() - 1
        total = 0
        for om in options[k]:
            if not mask & om:
                total += rec(mask | om)
        memo[mask] = total
        return total

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        return rec(0)
    finally:
        sys.setrecursionlimit(limit)


def count_symmetric_by_filter(r: Region, c: SymmetryClass) -> int:
    """Same count as ``count_symmetric`` by filtering the full enumeration (small regions only)."""
    if c.tag is SymmetryTag.PLAIN:
        return sum(1 for _ in enumerate_tilings(r))
    _check_invariant(r, c)
    gens = c.group()
    total = 0
    for t in enumerate_tilings(r):
        if all(frozenset(g.lozenge(lz) for lz in t) == t for g in gens):
            total += 1
    return total


def is_tiling(r: Region, tiling: Sequence[Lozenge] | Tiling) -> bool:
    seen: set[TriCell] = set()
    for lz in tiling:
        for c in lz.cells:
            if c in seen or c not in r:
                return False
            seen.add(c)
    return seen == r.cells
