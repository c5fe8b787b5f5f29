"""Closed-form ratio formulas, the decomposition counting routes and verification."""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, NamedTuple

from . import counting
from .counting import SymmetryClass, SymmetryTag
from .lattice import DOWN, UP, TriCell, is_invariant
from .lgv import count_L_lgv, pochhammer
from .regions import (
    LSpec,
    SnowflakeSpec,
    SpecError,
    admissible_W,
    build_H,
    build_snowflake,
    canonical_spec,
    decompose_H_into_L,
    flip_spec,
    snowflake_reflection,
    snowflake_rotation,
)

Ratio = Fraction


def label_multisets(s: SnowflakeSpec) -> dict[str, Counter]:
    """``A_o, A_e, B_o, B_e`` as multisets of labels."""
    out = {"A_o": Counter(), "A_e": Counter(), "B_o": Counter(), "B_e": Counter()}
    for k in range(6):
        parity = "o" if k % 2 == 0 else "e"
        out["A_" + parity].update(s.A[k])
        out["B_" + parity].update(s.B[k])
    return out


def _poch_product(labels: Iterable[int] | Counter, x: int) -> int:
    items = labels.elements() if isinstance(labels, Counter) else labels
    out = 1
    for a in items:
        out *= pochhammer(a, x)
    return out


def ratio_rhs_snowflake(s: SnowflakeSpec) -> Ratio:
    ms = label_multisets(s)
    num = _poch_product(ms["A_o"], s.x) * _poch_product(ms["B_o"], s.x)
    den = _poch_product(ms["A_e"], s.x) * _poch_product(ms["B_e"], s.x)
    return Fraction(num, den)


class NotSymmetric(ValueError):
    pass


def ratio_rhs_cyclic(s: SnowflakeSpec) -> Ratio:
    s = canonical_spec(s)
    if not s.is_cyclic():
        raise NotSymmetric("cyclic formula needs A1=A3=A5, A2=A4=A6, B1=B3=B5, B2=B4=B6")
    x = s.x
    return Fraction(
        _poch_product(s.A[0], x) * _poch_product(s.B[0], x),
        _poch_product(s.A[1], x) * _poch_product(s.B[1], x),
    )


def is_vertically_symmetric(s: SnowflakeSpec) -> bool:
    """Region-level test: the built region is its own mirror image."""
    try:
        region = build_snowflake(s)
    except SpecError:
        return False
    return is_invariant(region, snowflake_reflection(s.n, s.x, s.flipped))


def is_cyclically_symmetric(s: SnowflakeSpec) -> bool:
    try:
        region = build_snowflake(s)
    except SpecError:
        return False
    return is_invariant(region, snowflake_rotation(s.n, s.x, s.flipped))


def ratio_rhs_vertical(s: SnowflakeSpec) -> Ratio:
    if not is_vertically_symmetric(s):
        raise NotSymmetric("region is not symmetric about the vertical axis")
    ms = label_multisets(s)
    return Fraction(_poch_product(ms["A_o"], s.x), _poch_product(ms["A_e"], s.x))


def ratio_rhs_cyclic_vertical(s: SnowflakeSpec) -> Ratio:
    if not (is_vertically_symmetric(s) and is_cyclically_symmetric(s)):
        raise NotSymmetric("region must be both cyclically and vertically symmetric")
    s = canonical_spec(s)
    return Fraction(_poch_product(s.A[0], s.x), _poch_product(s.A[1], s.x))


# -- geometric form -----------------------------------------------------------

class LatticeLine(NamedTuple):
    """``family`` in {horizontal, positive, negative}: the line i, j or i+j = offset."""

    family: str
    offset: int


def cell_sides(c: TriCell) -> dict[LatticeLine, tuple[Fraction, Fraction]]:
    """The three lattice lines carrying a side of ``c``, with that side's midpoint."""
    i, j = c.i, c.j
    h = Fraction(1, 2)
    if c.orient == UP:
        return {
            LatticeLine("horizontal", i): (j + h, Fraction(i)),
            LatticeLine("positive", j): (Fraction(j), i + h),
            LatticeLine("negative", i + j + 1): (j + h, i + h),
        }
    return {
        LatticeLine("horizontal", i + 1): (j + h, Fraction(i + 1)),
        LatticeLine("positive", j + 1): (Fraction(j + 1), i + h),
        LatticeLine("negative", i + j + 1): (j + h, i + h),
    }


class NotSupported(ValueError):
    pass


def distance(t1: TriCell, t2: TriCell, line: LatticeLine) -> int:
    """Distance between the midpoints of the sides that ``t1`` and ``t2`` have on ``line``."""
    s1, s2 = cell_sides(t1), cell_sides(t2)
    if line not in s1 or line not in s2:
        raise NotSupported(f"{t1} and {t2} are not both supported on {line}")
    du = s2[line][0] - s1[line][0]
    dv = s2[line][1] - s1[line][1]
    sq = du * du + du * dv + dv * dv  # squared Euclidean length in the lattice metric
    if sq.denominator != 1 or isqrt(sq.numerator) ** 2 != sq.numerator:
        raise ArithmeticError(f"non-integral distance between {t1} and {t2}")
    return isqrt(sq.numerator)


@dataclass(frozen=True)
class Triangle:
    """Lattice triangle of side ``size``.

    An up triangle is ``j >= j0, i >= i0, i + j <= i0 + j0 + size``; a down
    triangle is ``j <= j0, i <= i0, i + j >= i0 + j0 - size``.
    """

    j0: int
    i0: int
    size: int
    orient: object = UP

    def side_lines(self) -> tuple[LatticeLine, LatticeLine, LatticeLine]:
        if self.orient == UP:
            return (
                LatticeLine("horizontal", self.i0),
                LatticeLine("positive", self.j0),
                LatticeLine("negative", self.i0 + self.j0 + self.size),
            )
        return (
            LatticeLine("horizontal", self.i0),
            LatticeLine("positive", self.j0),
            LatticeLine("negative", self.i0 + self.j0 - self.size),
        )

    def supported_on(self, line: LatticeLine) -> bool:
        return self.size > 0 and line in self.side_lines()


def projection(C: Triangle, line: LatticeLine) -> list[TriCell]:
    """The ``size`` unit cells of ``C`` having a side on ``line``."""
    if not C.supported_on(line):
        raise NotSupported(f"triangle is not supported on {line}")
    j0, i0, k = C.j0, C.i0, C.size
    if C.orient == UP:
        if line.family == "horizontal":
            return [TriCell(i0, j0 + t, UP) for t in range(k)]
        if line.family == "positive":
            return [TriCell(i0 + t, j0, UP) for t in range(k)]
        return [TriCell(i0 + k - 1 - t, j0 + t, UP) for t in range(k)]
    if line.family == "horizontal":
        return [TriCell(i0 - 1, j0 - k + t, DOWN) for t in range(k)]
    if line.family == "positive":
        return [TriCell(i0 - k + t, j0 - 1, DOWN) for t in range(k)]
    return [TriCell(i0 - 1 - t, j0 - k + t, DOWN) for t in range(k)]


def central_hole(s: SnowflakeSpec) -> Triangle:
    if s.flipped:
        return Triangle(s.x, 0, s.x, DOWN)
    return Triangle(0, 0, s.x, UP)


def ratio_rhs_geometric(s: SnowflakeSpec) -> Ratio:
    """Distance products between each unit hole and the central hole's projection.

    Holes are read off the built region (frame minus region), not from the labels.
    """
    s = flip_spec(s) if s.flipped else s
    X = central_hole(s)
    holes = build_H(s.n, s.x) - build_snowflake(s)
    num = den = 1
    if X.size == 0:
        return Fraction(1)
    for hole in holes:
        line = next((ln for ln in cell_sides(hole) if X.supported_on(ln)), None)
        if line is None:
            raise NotSupported(f"hole {hole} does not hang on a long diagonal")
        prod = 1
        for t in projection(X, line):
            prod *= distance(hole, t, line)
        if hole.orient == DOWN:
            num *= prod
        else:
            den *= prod
    return Fraction(num, den)


# -- counting routes --------------------------------------------------------

def count_H_via_decomposition(s: SnowflakeSpec) -> int:
    """Sum over W-triples of products of three L-region path counts."""
    total = 0
    for W in admissible_W(s):
        prod = 1
        for ls in decompose_H_into_L(s, W):
            prod *= count_L_lgv(ls)
            if prod == 0:
                break
        total += prod
    return total


def decomposition_terms(s: SnowflakeSpec) -> list[tuple[tuple, int]]:
    """Every admissible W with its summand (zeros included)."""
    out = []
    for W in admissible_W(s):
        prod = 1
        for ls in decompose_H_into_L(s, W):
            prod *= count_L_lgv(ls)
        out.append((W, prod))
    return out


def cyclic_L_spec(s: SnowflakeSpec, W2: frozenset[int]) -> LSpec:
    return LSpec(s.n, s.x, s.A[0] | W2, s.B[0], s.A[1], s.B[1] | W2, barred=s.flipped)


def cyclic_count_via_L(s: SnowflakeSpec) -> int:
    """Cyclically symmetric tilings counted through one L-region per W2."""
    s = canonical_spec(s)
    if not s.is_cyclic():
        raise NotSymmetric("cyclic route needs a cyclically symmetric spec")
    free = sorted(set(range(1, s.n + 1)) - s.A[0] - s.B[1])
    total = 0
    for r in range(len(free) + 1):
        for combo in itertools.combinations(free, r):
            total += count_L_lgv(cyclic_L_spec(s, frozenset(combo)))
    return total


def macmahon(a: int, b: int, c: int) -> int:
    prod = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                prod *= Fraction(i + j + k - 1, i + j + k - 2)
    assert prod.denominator == 1, prod
    return prod.numerator


# -- symmetry classes for snowflakes ------------------------------------------

def symmetry_class(s: SnowflakeSpec, tag: str | SymmetryTag) -> SymmetryClass:
    tag = SymmetryTag(tag)
    rot = snowflake_rotation(s.n, s.x, s.flipped) if tag in (SymmetryTag.R, SymmetryTag.RV) else None
    ref = snowflake_reflection(s.n, s.x, s.flipped) if tag in (SymmetryTag.V, SymmetryTag.RV) else None
    return SymmetryClass(tag, rot, ref)


def applicable_classes(s: SnowflakeSpec) -> list[str]:
    out = []
    cyc = is_cyclically_symmetric(s) and is_cyclically_symmetric(flip_spec(s))
    ver = is_vertically_symmetric(s) and is_vertically_symmetric(flip_spec(s))
    if cyc:
        out.append("r")
    if ver:
        out.append("v")
    if cyc and ver:
        out.append("rv")
    return out


# -- verification -----------------------------------------------------------

ROUTES = ("enum", "det", "lgv")

# auto-route limits: enumeration and orbit search stay fast below these sizes
ENUM_CELL_LIMIT = 160
LGV_TRIPLE_LIMIT = 5000


@dataclass
class SymmetryReport:
    tag: str
    count_H: int
    count_Hbar: int
    via_L: tuple[int, int] | None
    measured: Fraction | None
    formula: Fraction


@dataclass
class VerificationReport:
    spec: SnowflakeSpec
    counts_H: dict[str, int]
    counts_Hbar: dict[str, int]
    measured: Fraction | None
    formula: Fraction
    geometric: Fraction
    symmetry: list[SymmetryReport] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def hypothesis_met(self) -> bool:
        return self.measured is not None

    @property
    def verdict(self) -> bool:
        return all(ok for _, ok in self.checks)


def _auto_routes(s: SnowflakeSpec) -> tuple[str, ...]:
    routes = ["det"]
    if len(build_H(s.n, s.x)) <= ENUM_CELL_LIMIT:
        routes.insert(0, "enum")
    triples = 1
    for idx in range(3):
        free = s.n - len(s.A[(2 * idx + 2) % 6] | s.B[2 * idx + 1])
        triples *= 2 ** free
    if triples <= LGV_TRIPLE_LIMIT:
        routes.append("lgv")
    return tuple(routes)


def _counts(s: SnowflakeSpec, routes: Iterable[str]) -> dict[str, int]:
    out = {}
    region = build_snowflake(s)
    for route in routes:
        if route == "enum":
            out[route] = counting.count_enumeration(region)
        elif route == "det":
            out[route] = counting.count_determinant(region)
        elif route == "lgv":
            out[route] = count_H_via_decomposition(s)
        else:
            raise ValueError(f"unknown route {route!r}")
    return out


def verify(
    s: SnowflakeSpec,
    routes: Iterable[str] | None = None,
    symmetry: bool | None = None,
) -> VerificationReport:
    """Count H and its flip by the chosen routes and check every applicable identity.

    ``symmetry=None`` checks symmetry classes whenever the enumeration route runs.
    """
    start = time.perf_counter()
    if s.flipped:
        s = flip_spec(s)
    sbar = flip_spec(s)
    routes = tuple(routes) if routes else _auto_routes(s)
    if symmetry is None:
        symmetry = "enum" in routes
    counts_H = _counts(s, routes)
    counts_Hbar = _counts(sbar, routes)
    checks: list[tuple[str, bool]] = []
    checks.append(("H routes agree", len(set(counts_H.values())) == 1))
    checks.append(("Hbar routes agree", len(set(counts_Hbar.values())) == 1))

    m_h = next(iter(counts_H.values()))
    m_hb = next(iter(counts_Hbar.values()))
    formula = ratio_rhs_snowflake(s)
    geometric = ratio_rhs_geometric(s)
    checks.append(("geometric form equals product formula", geometric == formula))
    measured = None
    if m_h > 0:
        measured = Fraction(m_hb, m_h)
        checks.append(("M(Hbar)/M(H) equals product formula", m_hb * formula.denominator == m_h * formula.numerator))
    else:
        checks.append(("M(H) = 0 implies M(Hbar) = 0", m_hb == 0))

    sym_reports = []
    if symmetry:
        for tag in applicable_classes(s):
            sym_reports.append(_check_class(s, sbar, tag, measured, checks))

    return VerificationReport(
        spec=s,
        counts_H=counts_H,
        counts_Hbar=counts_Hbar,
        measured=measured,
        formula=formula,
        geometric=geometric,
        symmetry=sym_reports,
        checks=checks,
        seconds=time.perf_counter() - start,
    )


def _check_class(s, sbar, tag, measured, checks) -> SymmetryReport:
    c_h = counting.count_symmetric(build_snowflake(s), symmetry_class(s, tag))
    c_hb = counting.count_symmetric(build_snowflake(sbar), symmetry_class(sbar, tag))
    via_L = None
    if tag == "r":
        formula = ratio_rhs_cyclic(s)
        via_L = (cyclic_count_via_L(s), cyclic_count_via_L(sbar))
        checks.append(("M_r(H) equals L-route", via_L[0] == c_h))
        checks.append(("M_r(Hbar) equals L-route", via_L[1] == c_hb))
        power = 3
    elif tag == "v":
        formula = ratio_rhs_vertical(s)
        power = 2
    else:
        formula = ratio_rhs_cyclic_vertical(s)
        power = 6
    sym_measured = None
    if c_h > 0:
        sym_measured = Fraction(c_hb, c_h)
        checks.append((f"M_{tag} ratio equals formula", sym_measured == formula))
        if measured is not None:
            checks.append((f"M_{tag} ratio to the power {power} equals M ratio", sym_measured ** power == measured))
    else:
        checks.append((f"M_{tag}(H) = 0 implies M_{tag}(Hbar) = 0", c_hb == 0))
    return SymmetryReport(tag, c_h, c_hb, via_L, sym_measured, formula)
