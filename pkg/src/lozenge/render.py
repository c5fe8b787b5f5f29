"""Deterministic SVG drawings of regions and tilings.

One lattice unit is 20 px and y points down.  Coordinates are written with
three decimals and elements in sorted order, so equal inputs give equal bytes.
"""

from __future__ import annotations

from typing import Iterable

from .lattice import Lozenge, LozengeKind, Region, TriCell, planar
from .regions import _H_HOLES, _HBAR_HOLES, SnowflakeSpec, hole_cells

UNIT = 20.0
MARGIN = 10.0

PALETTE = {
    "hole": "#8c8c8c",
    "cell": "#ffffff",
    "grid": "#d9d9d9",
    "outline": "#000000",
    "dendrite": "#c0392b",
    "label": "#1f3a93",
    LozengeKind.LEFT: "#e9c46a",
    LozengeKind.VERTICAL: "#2a9d8f",
    LozengeKind.RIGHT: "#f4a261",
}


def _f(v: float) -> str:
    out = f"{v:.3f}"
    return "0.000" if out == "-0.000" else out


class _Canvas:
    def __init__(self, cells: Iterable[TriCell]):
        pts = [planar(v) for c in cells for v in c.vertices()]
        if pts:
            self.x0 = min(p[0] for p in pts)
            self.y1 = max(p[1] for p in pts)
            self.width = (max(p[0] for p in pts) - self.x0) * UNIT + 2 * MARGIN
            self.height = (self.y1 - min(p[1] for p in pts)) * UNIT + 2 * MARGIN
        else:
            self.x0 = self.y1 = 0.0
            self.width = self.height = 2 * MARGIN

    def xy(self, v) -> tuple[str, str]:
        x, y = planar(v)
        return _f((x - self.x0) * UNIT + MARGIN), _f((self.y1 - y) * UNIT + MARGIN)

    def points(self, verts) -> str:
        return " ".join(",".join(self.xy(v)) for v in verts)


def _lozenge_vertices(lz: Lozenge) -> list[tuple[int, int]]:
    va, vb = set(lz.a.vertices()), set(lz.b.vertices())
    p, q = sorted(va & vb)
    (apex_a,) = va - vb
    (apex_b,) = vb - va
    return [apex_a, p, apex_b, q]


def _boundary_edges(r: Region) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    edges: dict[tuple, int] = {}
    for c in r:
        vs = c.vertices()
        for k in range(3):
            e = tuple(sorted((vs[k], vs[(k + 1) % 3])))
            edges[e] = edges.get(e, 0) + 1
    return sorted(e for e, m in edges.items() if m == 1)


def _dendrite_lines(s: SnowflakeSpec, frame: Region) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    x = s.x
    if s.flipped:
        tests = (lambda j, i: i == 0, lambda j, i: j == x, lambda j, i: i + j == 0)
    else:
        tests = (lambda j, i: i == 0, lambda j, i: j == 0, lambda j, i: i + j == x)
    verts = sorted({v for c in frame for v in c.vertices()})
    out = []
    for on in tests:
        hits = [v for v in verts if on(*v)]
        if len(hits) >= 2:
            out.append((hits[0], hits[-1]))
    return out


# hole families on the two sides of each arm; their label-k cells share segment k
ARMS = (("A1", "B6"), ("A2", "B1"), ("A3", "B2"), ("A4", "B3"), ("A5", "B4"), ("A6", "B5"))


def _arm_segments(s: SnowflakeSpec) -> list[tuple[tuple[float, float], int]]:
    table = _HBAR_HOLES if s.flipped else _H_HOLES
    out = []
    for fa, fb in ARMS:
        for k in range(1, s.n + 1):
            va, vb = table[fa](s.x, k).vertices(), table[fb](s.x, k).vertices()
            p, q = sorted(set(va) & set(vb))
            out.append((((p[0] + q[0]) / 2, (p[1] + q[1]) / 2), k))
    return out


def _center_names(s: SnowflakeSpec) -> list[tuple[tuple[int, int], str]]:
    if s.x == 0 or s.flipped:
        return []
    return [((0, 0), "L"), ((s.x, 0), "R"), ((0, s.x), "U")]


def render_svg(
    region: Region,
    frame: Region | None = None,
    tiling: Iterable[Lozenge] | None = None,
    snowflake: SnowflakeSpec | None = None,
    dendrites: bool = False,
    labels: bool = False,
) -> str:
    """SVG text for ``region`` cut from ``frame`` (holes are ``frame - region``)."""
    frame = frame if frame is not None else region
    everything = Region(frame.cells | region.cells)
    cv = _Canvas(everything)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(cv.width)}" '
        f'height="{_f(cv.height)}" viewBox="0 0 {_f(cv.width)} {_f(cv.height)}">',
    ]

    holes = (everything - region).sorted_cells()
    out.append(f'<g id="holes" fill="{PALETTE["hole"]}" stroke="{PALETTE["hole"]}" stroke-width="0.5">')
    for c in holes:
        out.append(f'<polygon points="{cv.points(c.vertices())}"/>')
    out.append("</g>")

    if tiling is None:
        out.append(f'<g id="cells" fill="{PALETTE["cell"]}" stroke="{PALETTE["grid"]}" stroke-width="0.5">')
        for c in region.sorted_cells():
            out.append(f'<polygon points="{cv.points(c.vertices())}"/>')
        out.append("</g>")
    else:
        out.append('<g id="tiling" stroke="#000000" stroke-width="0.8">')
        for lz in sorted(tiling):
            out.append(
                f'<polygon class="{lz.kind.value}" fill="{PALETTE[lz.kind]}" '
                f'points="{cv.points(_lozenge_vertices(lz))}"/>'
            )
        out.append("</g>")

    out.append(f'<g id="outline" stroke="{PALETTE["outline"]}" stroke-width="1.5" stroke-linecap="round">')
    for p, q in _boundary_edges(region):
        (x1, y1), (x2, y2) = cv.xy(p), cv.xy(q)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")

    if snowflake is not None and dendrites:
        out.append(f'<g id="dendrites" stroke="{PALETTE["dendrite"]}" stroke-width="1" stroke-dasharray="4,3">')
        for p, q in _dendrite_lines(snowflake, frame):
            (x1, y1), (x2, y2) = cv.xy(p), cv.xy(q)
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        out.append("</g>")

    if snowflake is not None and labels:
        out.append(
            f'<g id="labels" fill="{PALETTE["label"]}" font-family="sans-serif" '
            f'font-size="7" text-anchor="middle">'
        )
        for mid, k in _arm_segments(snowflake):
            x, y = cv.xy(mid)
            out.append(f'<text class="segment" x="{x}" y="{_f(float(y) + 2.5)}">{k}</text>')
        for v, name in _center_names(snowflake):
            x, y = cv.xy(v)
            out.append(f'<text class="vertex" x="{x}" y="{_f(float(y) - 3.0)}">{name}</text>')
        for c, (name, k) in sorted(hole_cells(snowflake).items()):
            cj, ci = c.centroid()
            x, y = cv.xy((cj, ci))
            out.append(f'<text class="hole" x="{x}" y="{_f(float(y) + 2.5)}">{name}:{k}</text>')
        out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"
