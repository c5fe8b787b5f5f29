import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lozenge.counting import count_determinant, count_enumeration, count_symmetric
from lozenge.lattice import DOWN, UP, down, up
from lozenge.regions import (
    SnowflakeSpec,
    SpecError,
    _frame,
    build_snowflake,
    canonical_spec,
    flip_spec,
    forced_lozenges,
    remove_lozenges,
    split_snowflake,
)
from lozenge.sampling import random_snowflake
from lozenge.specfile import load
from lozenge.theorem import (
    LatticeLine,
    NotSupported,
    NotSymmetric,
    Triangle,
    cell_sides,
    count_H_via_decomposition,
    cyclic_count_via_L,
    decomposition_terms,
    distance,
    macmahon,
    projection,
    ratio_rhs_cyclic,
    ratio_rhs_cyclic_vertical,
    ratio_rhs_geometric,
    ratio_rhs_snowflake,
    ratio_rhs_vertical,
    symmetry_class,
    verify,
)
from conftest import FIXTURES
from oracles import rising, theorem_ratio
from strategies import snowflake_specs

E = frozenset()
FIG = load(FIXTURES / "snowflake_7_3.json")
seeds = st.integers(0, 2**32 - 1)


def spec(n, x, A, B=((),) * 6):
    return SnowflakeSpec(n, x, tuple(frozenset(a) for a in A), tuple(frozenset(b) for b in B))


def cells_of(tri):
    """Unit cells inside a lattice triangle, by testing their vertices."""
    j0, i0, k = tri.j0, tri.i0, tri.size
    if tri.orient == UP:
        inside = lambda v: v[0] >= j0 and v[1] >= i0 and v[0] + v[1] <= i0 + j0 + k
    else:
        inside = lambda v: v[0] <= j0 and v[1] <= i0 and v[0] + v[1] >= i0 + j0 - k
    box = [(j, i) for j in range(j0 - k - 1, j0 + k + 1) for i in range(i0 - k - 1, i0 + k + 1)]
    return {c for j, i in box for c in (up(j, i), down(j, i)) if all(inside(v) for v in c.vertices())}


# -- formulas ---------------------------------------------------------------

def test_trivial_formula_values():
    assert ratio_rhs_snowflake(SnowflakeSpec(3, 2)) == 1
    s = spec(3, 0, [{1}, {2}, (), {3}, (), ()], [(), (), {1}, (), (), ()])
    assert ratio_rhs_snowflake(s) == 1
    assert ratio_rhs_geometric(s) == 1


def test_fixture_formula():
    x = 3
    r = lambda *labels: [rising(a, x) for a in labels]
    num = r(3, 7, 3, 7, 1, 5) + r(2, 5, 6, 3, 5, 5)
    den = r(6, 6, 2, 3, 7) + r(2, 3, 4, 3, 6, 2, 5)
    expected = Fraction(1)
    for v in num:
        expected *= v
    for v in den:
        expected /= v
    assert ratio_rhs_snowflake(FIG) == expected == Fraction(3675, 1024)
    assert ratio_rhs_geometric(FIG) == expected


@given(snowflake_specs(n_max=4, x_max=3))
def test_formula_matches_oracle(s):
    assert ratio_rhs_snowflake(s) == theorem_ratio(s.A, s.B, s.x)


@given(snowflake_specs(n_max=4, x_max=3))
def test_geometric_form(s):
    assert ratio_rhs_geometric(s) == ratio_rhs_snowflake(s)
    assert ratio_rhs_geometric(flip_spec(s)) == ratio_rhs_snowflake(s)


@pytest.mark.parametrize("arm", range(6))
@pytest.mark.parametrize("a,x", [(1, 1), (2, 3), (4, 2), (5, 4)])
def test_single_hole_distance_product(arm, a, x):
    A = [()] * 6
    A[arm] = {a}
    s = spec(5, x, A)
    value = ratio_rhs_geometric(s)
    expected = rising(a, x)
    assert value == (expected if arm % 2 == 0 else Fraction(1, expected))


def test_cyclic_example():
    s = spec(2, 1, [{2}, ()] * 3, [(), {1}] * 3)
    assert ratio_rhs_cyclic(s) == 2
    assert ratio_rhs_snowflake(s) == 8
    sb = flip_spec(s)
    m_r = count_symmetric(build_snowflake(s), symmetry_class(s, "r"))
    m_r_bar = count_symmetric(build_snowflake(sb), symmetry_class(sb, "r"))
    assert Fraction(m_r_bar, m_r) == 2
    assert Fraction(count_enumeration(build_snowflake(sb)), count_enumeration(build_snowflake(s))) == 8


def test_non_symmetric_specs_rejected():
    s = spec(3, 1, [{1}, (), (), (), (), ()])
    with pytest.raises(NotSymmetric):
        ratio_rhs_cyclic(s)
    with pytest.raises(NotSymmetric):
        ratio_rhs_vertical(spec(3, 1, [(), {2}, (), (), (), ()]))
    with pytest.raises(NotSymmetric):
        ratio_rhs_cyclic_vertical(s)
    with pytest.raises(NotSymmetric):
        cyclic_count_via_L(s)


def test_empty_symmetric_formulas():
    s = SnowflakeSpec(3, 2)
    assert ratio_rhs_cyclic(s) == ratio_rhs_vertical(s) == ratio_rhs_cyclic_vertical(s) == 1
    A = [{2}, {2}, {3}, (), (), ()]
    s0 = spec(3, 0, A, [A[0], A[5], A[4], A[3], A[2], A[1]])
    assert ratio_rhs_vertical(s0) == 1


def test_rv_example_formula():
    # x = 1, A1 = {2}: the symmetric region has no tilings on either side, so only the value is checked
    s = spec(2, 1, [{2}, ()] * 3, [{2}, ()] * 3)
    assert ratio_rhs_cyclic_vertical(s) == 2


@given(seeds)
def test_cube_identity(seed):
    s = random_snowflake(random.Random(seed), 5, 3, cls="r", balanced=False)
    assert ratio_rhs_cyclic(s) ** 3 == ratio_rhs_snowflake(s)


@given(seeds)
def test_square_identity(seed):
    s = random_snowflake(random.Random(seed), 5, 3, cls="v", balanced=False)
    assert ratio_rhs_vertical(s) ** 2 == ratio_rhs_snowflake(s)


@given(seeds)
def test_root_tower(seed):
    s = random_snowflake(random.Random(seed), 5, 3, cls="rv", balanced=False)
    rv = ratio_rhs_cyclic_vertical(s)
    a_part = Fraction(rising_product(s.A[0], s.x), rising_product(s.A[1], s.x))
    assert rv == a_part
    assert rv ** 2 == ratio_rhs_cyclic(s)
    assert rv ** 3 == ratio_rhs_vertical(s)
    assert rv ** 6 == ratio_rhs_snowflake(s)


def rising_product(labels, x):
    out = 1
    for a in labels:
        out *= rising(a, x)
    return out


# -- distances and projections -------------------------------------------------

def test_distance_fixture():
    line = LatticeLine("horizontal", 0)
    A, B, C = up(0, 0), down(5, -1), up(8, 0)
    assert distance(A, B, line) == 5
    assert distance(B, C, line) == 3
    assert distance(A, A, line) == 0
    assert distance(up(0, 0), down(1, -1), line) == 1


def test_distance_on_slanted_lines():
    pos = LatticeLine("positive", 0)
    assert distance(up(0, 0), up(0, 4), pos) == 4
    neg = LatticeLine("negative", 1)
    assert distance(up(0, 0), down(0, 0), neg) == 0
    assert distance(up(0, 0), up(3, -3), neg) == 3


def test_distance_requires_support():
    with pytest.raises(NotSupported):
        distance(up(0, 0), up(0, 3), LatticeLine("horizontal", 0))


@pytest.mark.parametrize("orient", [UP, DOWN])
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_projection(orient, k):
    tri = Triangle(2, -1, k, orient)
    inside = cells_of(tri)
    assert len(inside) == k * k
    for line in tri.side_lines():
        cells = projection(tri, line)
        assert len(cells) == k and set(cells) <= inside
        assert all(c.orient == orient and line in cell_sides(c) for c in cells)
        if k == 1:
            assert cells == [next(iter(inside))]
        dists = {distance(cells[0], c, line) for c in cells[1:]}
        assert dists == set(range(1, k))


def test_projection_requires_support():
    with pytest.raises(NotSupported):
        projection(Triangle(0, 0, 3, UP), LatticeLine("horizontal", 1))
    with pytest.raises(NotSupported):
        projection(Triangle(0, 0, 0, UP), LatticeLine("horizontal", 0))


# -- decomposition -------------------------------------------------------------

def test_decomposition_small_cases():
    assert count_H_via_decomposition(SnowflakeSpec(1, 0)) == 2
    unbalanced = spec(2, 1, [{1}, (), (), (), (), ()])
    assert count_H_via_decomposition(unbalanced) == 0
    assert count_determinant(build_snowflake(unbalanced)) == 0


def test_fixture_decomposition():
    for s in (FIG, flip_spec(FIG)):
        assert count_H_via_decomposition(s) == count_determinant(build_snowflake(s))
    assert count_determinant(build_snowflake(FIG)) == 139252776960
    assert count_determinant(build_snowflake(flip_spec(FIG))) == 499759722000


@given(snowflake_specs(n_max=3, x_max=1))
@settings(max_examples=40)
def test_decomposition_matches_region(s):
    for t in (s, flip_spec(s)):
        assert count_H_via_decomposition(t) == count_determinant(build_snowflake(t))


def split_count(s, W):
    try:
        parts = split_snowflake(s, W)
    except SpecError:
        return 0  # a W lozenge lands on an existing hole
    out = 1
    for part in parts:
        out *= count_determinant(part)
    return out


@given(snowflake_specs(n_max=3, x_max=1))
@settings(max_examples=25)
def test_split_parts_are_the_L_regions(s):
    sb = flip_spec(s)
    for (W, term), (Wb, term_b) in zip(decomposition_terms(s), decomposition_terms(sb)):
        assert W == Wb
        assert split_count(s, W) == term
        assert split_count(sb, W) == term_b
        assert (term != 0) == (term_b != 0)


def test_every_tiling_splits():
    s = spec(2, 1, [{2}, (), (), {1}, (), ()], [(), (), {1}, (), (), {2}])
    total = sum(term for _, term in decomposition_terms(s))
    assert total == count_enumeration(build_snowflake(s))


@given(seeds)
@settings(max_examples=25)
def test_cyclic_route_on_random_specs(seed):
    c = random_snowflake(random.Random(seed), 3, 1, cls="r", balanced=False)
    for t in (c, flip_spec(c)):
        assert cyclic_count_via_L(t) == count_symmetric(build_snowflake(t), symmetry_class(t, "r"))


def test_cyclic_route_trivial():
    assert cyclic_count_via_L(SnowflakeSpec(1, 0)) == 2


def test_macmahon_edges():
    assert macmahon(1, 1, 1) == 2
    assert macmahon(2, 2, 2) == 20
    assert all(macmahon(a, b, 0) == 1 for a in range(4) for b in range(4))


# -- verification ----------------------------------------------------------------

@pytest.mark.parametrize("n,x", [(1, 0), (2, 1), (3, 2), (2, 3)])
def test_verify_empty_specs(n, x):
    rep = verify(SnowflakeSpec(n, x))
    assert rep.verdict
    assert rep.formula == 1 and rep.measured == 1
    assert set(rep.counts_H.values()) == set(rep.counts_Hbar.values())


def test_verify_fixture():
    rep = verify(FIG, routes=("det",))
    assert rep.verdict and rep.measured == Fraction(3675, 1024)


def test_verify_reports_unmet_hypothesis():
    rep = verify(spec(2, 1, [{1}, (), (), (), (), ()]))
    assert not rep.hypothesis_met and rep.measured is None
    assert rep.verdict
    assert set(rep.counts_H.values()) == set(rep.counts_Hbar.values()) == {0}


def test_negative_control_fails():
    bad = load(FIXTURES / "negative_control.json")
    rep = verify(bad, routes=("det",))
    assert not rep.verdict
    assert rep.measured == Fraction(9, 4) and rep.formula == 4
    good = load(FIXTURES / "negative_control_unshifted.json")
    assert verify(good).verdict


@given(snowflake_specs(n_max=3, x_max=2))
@settings(max_examples=30)
def test_verify_random(s):
    rep = verify(s)
    assert rep.verdict, rep.checks


# -- corollary fixtures -----------------------------------------------------------

def trimmed(s):
    r = build_snowflake(s)
    out = remove_lozenges(r, forced_lozenges(r))
    assert count_determinant(out) == count_determinant(r)
    return out


def holes(s, region):
    return set(_frame(s.n, s.x, s.flipped)) - set(region.cells)


def hull(region):
    """Smallest lattice hexagon (bounds on j, i and i + j) containing the region."""
    verts = [v for c in region.cells for v in c.vertices()]
    js, is_, ss = [v[0] for v in verts], [v[1] for v in verts], [v[0] + v[1] for v in verts]
    ok = lambda v: min(js) <= v[0] <= max(js) and min(is_) <= v[1] <= max(is_) and min(ss) <= v[0] + v[1] <= max(ss)
    box = [(j, i) for j in range(min(js) - 1, max(js) + 1) for i in range(min(is_) - 1, max(is_) + 1)]
    return {c for j, i in box for c in (up(j, i), down(j, i)) if all(ok(v) for v in c.vertices())}


def test_triangle_flip():
    s = load(FIXTURES / "negative_control_unshifted.json")
    assert s.x == 1
    assert cells_of(Triangle(0, 0, 1, UP)) <= holes(s, build_snowflake(s))
    sb = flip_spec(s)
    assert cells_of(Triangle(1, 0, 1, DOWN)) <= holes(sb, build_snowflake(sb))
    ratio = Fraction(count_determinant(build_snowflake(sb)), count_determinant(build_snowflake(s)))
    assert ratio == ratio_rhs_snowflake(s) == 4


def test_bowtie_triad():
    s = spec(4, 1, [{2}, ()] * 3, [(), {3}] * 3)
    r, rb = build_snowflake(s), build_snowflake(flip_spec(s))
    assert not forced_lozenges(r)
    m, mb = count_determinant(r), count_determinant(rb)
    assert (m, mb) == (235710, 69840)
    assert Fraction(mb, m) == ratio_rhs_snowflake(s) == Fraction(8, 27)


@pytest.mark.slow
def test_shamrock():
    n, x, m = 5, 1, 1
    s = spec(n, x, [{1}, {5}] * 3)
    sb = flip_spec(s)
    h, hb = trimmed(s), trimmed(sb)
    lobes = cells_of(Triangle(x + m, 0, m, DOWN)) | cells_of(Triangle(0, 0, m, DOWN)) | cells_of(Triangle(0, x + m, m, DOWN))
    shamrock = cells_of(Triangle(0, 0, x, UP)) | lobes
    # trimming also peels the boundary, so compare against the lattice hull
    assert hull(h) - set(h.cells) == shamrock
    hole_b = hull(hb) - set(hb.cells)
    # and the flipped side has a single down triangle, the core and the three lobes merged
    verts = {v for c in hole_b for v in c.vertices()}
    j0, i0 = max(v[0] for v in verts), max(v[1] for v in verts)
    size = j0 + i0 - min(v[0] + v[1] for v in verts)
    assert size == x + 3 * m
    assert hole_b == cells_of(Triangle(j0, i0, size, DOWN))
    assert count_determinant(h) == 9801000 and count_determinant(hb) == 78408
    m_r = count_symmetric(h, symmetry_class(s, "r"))
    m_r_bar = count_symmetric(hb, symmetry_class(sb, "r"))
    assert (m_r, m_r_bar) == (360, 72)
    assert Fraction(m_r_bar, m_r) == ratio_rhs_cyclic(s) == Fraction(1, 5)
    assert Fraction(m_r_bar, m_r) ** 3 == Fraction(78408, 9801000)


def test_shared_cells_respelled_for_symmetry():
    # at x = 0, A_k and B_k share their label-1 cell, so this spec builds a rotation-invariant pair
    s = spec(1, 0, [(), {1}, {1}, (), (), ()], [{1}, (), (), {1}, {1}, {1}])
    assert not s.is_cyclic()
    assert canonical_spec(s).is_cyclic()
    assert build_snowflake(canonical_spec(s)) == build_snowflake(s)
    rep = verify(s)
    assert rep.verdict and [r.tag for r in rep.symmetry] == ["r", "v", "rv"]


@pytest.mark.parametrize("x", [1, 2, 3])
def test_respelling_needs_both_sides(x):
    # for x > 0 the two names split apart on one side, so nothing moves
    s = spec(3, x, [(), (), (), (), (), ()], [{1}, {1}, (), (), (), ()])
    assert canonical_spec(s) == s
