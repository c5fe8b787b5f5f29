"""JSON region-spec files.

Schema (every document is one object, unknown keys are rejected)::

    {"type": "hexagon",   "a": 2, "b": 2, "c": 2}
    {"type": "H",         "n": 7, "x": 3, "flipped": false}
    {"type": "snowflake", "n": 7, "x": 3, "A": [[...] x6], "B": [[...] x6],
                          "flipped": false, "hole_shift": 0}
    {"type": "l_region",  "n": 4, "x": 2, "P": [], "Q": [], "R": [], "S": [],
                          "barred": false}
    {"type": "explicit",  "cells": [[i, j, "up"], [i, j, "down"], ...]}

``flipped``, ``barred`` and ``hole_shift`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from .lattice import DOWN, UP, Region, TriCell
from .regions import (
    LSpec,
    SnowflakeSpec,
    SpecError,
    build_H,
    build_L,
    build_hexagon,
    build_snowflake,
    l_frame,
    _frame,
)

_FIELDS = {
    "hexagon": ({"a", "b", "c"}, set()),
    "H": ({"n", "x"}, {"flipped"}),
    "snowflake": ({"n", "x", "A", "B"}, {"flipped", "hole_shift"}),
    "l_region": ({"n", "x", "P", "Q", "R", "S"}, {"barred"}),
    "explicit": ({"cells"}, set()),
}


@dataclass(frozen=True)
class Hexagon:
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class HRegion:
    n: int
    x: int
    flipped: bool = False


@dataclass(frozen=True)
class Explicit:
    region: Region


Spec = Union[Hexagon, HRegion, SnowflakeSpec, LSpec, Explicit]


def _int(doc: dict, key: str, minimum: int | None = 0) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"field {key!r} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise SpecError(f"field {key!r} must be >= {minimum}, got {v}")
    return v


def _bool(doc: dict, key: str) -> bool:
    v = doc.get(key, False)
    if not isinstance(v, bool):
        raise SpecError(f"field {key!r} must be true or false, got {v!r}")
    return v


def _labels(v: Any, key: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(k, bool) or not isinstance(k, int) for k in v):
        raise SpecError(f"field {key!r} must be a list of integers, got {v!r}")
    if len(set(v)) != len(v):
        raise SpecError(f"field {key!r} repeats a label")
    return v


def _six(doc: dict, key: str) -> list[list[int]]:
    v = doc[key]
    if not isinstance(v, list) or len(v) != 6:
        raise SpecError(f"field {key!r} must hold exactly six label lists")
    return [_labels(item, f"{key}{idx + 1}") for idx, item in enumerate(v)]


def _cell(v: Any) -> TriCell:
    ok = isinstance(v, list) and len(v) == 3 and v[2] in ("up", "down")
    ok = ok and all(isinstance(t, int) and not isinstance(t, bool) for t in v[:2])
    if not ok:
        raise SpecError(f"cell must be [i, j, \"up\"|\"down\"], got {v!r}")
    return TriCell(v[0], v[1], UP if v[2] == "up" else DOWN)


def parse(doc: Any) -> Spec:
    """Validate a decoded JSON document and return the typed spec.

    Raises ``SpecError`` naming the failing constraint.
    """
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    kind = doc.get("type")
    if kind not in _FIELDS:
        raise SpecError(f"unknown type {kind!r}; expected one of {sorted(_FIELDS)}")
    required, optional = _FIELDS[kind]
    present = set(doc) - {"type"}
    if required - present:
        raise SpecError(f"missing field(s) {sorted(required - present)} for type {kind!r}")
    if present - required - optional:
        raise SpecError(f"unknown field(s) {sorted(present - required - optional)} for type {kind!r}")

    if kind == "hexagon":
        return Hexagon(_int(doc, "a"), _int(doc, "b"), _int(doc, "c"))
    if kind == "H":
        return HRegion(_int(doc, "n"), _int(doc, "x"), _bool(doc, "flipped"))
    if kind == "snowflake":
        shift = _int(doc, "hole_shift", None) if "hole_shift" in doc else 0
        spec = SnowflakeSpec(
            _int(doc, "n"), _int(doc, "x"), _six(doc, "A"), _six(doc, "B"), _bool(doc, "flipped"), shift
        )
        build_snowflake(spec)
        return spec
    if kind == "l_region":
        spec = LSpec(
            _int(doc, "n"),
            _int(doc, "x"),
            *(_labels(doc[k], k) for k in "PQRS"),
            barred=_bool(doc, "barred"),
        )
        spec.hole_cells()
        return spec
    cells = doc["cells"]
    if not isinstance(cells, list):
        raise SpecError("field 'cells' must be a list")
    parsed = [_cell(c) for c in cells]
    if len(set(parsed)) != len(parsed):
        raise SpecError("explicit region lists a cell twice")
    return Explicit(Region(parsed))


def serialize(spec: Spec) -> dict:
    """Canonical document: every field present, label lists sorted."""
    if isinstance(spec, Hexagon):
        return {"type": "hexagon", "a": spec.a, "b": spec.b, "c": spec.c}
    if isinstance(spec, HRegion):
        return {"type": "H", "n": spec.n, "x": spec.x, "flipped": spec.flipped}
    if isinstance(spec, SnowflakeSpec):
        return {
            "type": "snowflake",
            "n": spec.n,
            "x": spec.x,
            "A": [sorted(a) for a in spec.A],
            "B": [sorted(b) for b in spec.B],
            "flipped": spec.flipped,
            "hole_shift": spec.hole_shift,
        }
    if isinstance(spec, LSpec):
        doc: dict[str, Any] = {"type": "l_region", "n": spec.n, "x": spec.x}
        for k in "PQRS":
            doc[k] = sorted(getattr(spec, k))
        doc["barred"] = spec.barred
        return doc
    cells = [[c.i, c.j, "up" if c.orient == UP else "down"] for c in spec.region.sorted_cells()]
    return {"type": "explicit", "cells": cells}


def load(path: str | Path) -> Spec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse(doc)


def dumps(spec: Spec) -> str:
    return json.dumps(serialize(spec), indent=2) + "\n"


def build(spec: Spec) -> Region:
    if isinstance(spec, Hexagon):
        return build_hexagon(spec.a, spec.b, spec.c)
    if isinstance(spec, HRegion):
        return build_H(spec.n, spec.x, spec.flipped)
    if isinstance(spec, SnowflakeSpec):
        return build_snowflake(spec)
    if isinstance(spec, LSpec):
        return build_L(spec)
    return spec.region


def frame(spec: Spec) -> Region:
    """The hole-free outline the region is cut from (the region itself when it has none)."""
    if isinstance(spec, (HRegion, SnowflakeSpec)):
        return Region(_frame(spec.n, spec.x, spec.flipped))
    if isinstance(spec, LSpec):
        return l_frame(spec.n, spec.x, spec.barred)
    return build(spec)


def as_snowflake(spec: Spec) -> SnowflakeSpec | None:
    if isinstance(spec, SnowflakeSpec):
        return spec
    if isinstance(spec, HRegion):
        return SnowflakeSpec(spec.n, spec.x, flipped=spec.flipped)
    return None

