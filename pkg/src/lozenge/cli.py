"""Command-line front end: ``lozenge {count,verify,sweep,render,macmahon}``.

Exit codes: 0 success, 1 a count disagreement or failed verdict, 2 invalid input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import counting, specfile
from .lgv import count_L_lgv, hexagon_path_system, lgv_count
from .regions import LSpec, SnowflakeSpec, SpecError
from .render import render_svg
from .sampling import random_snowflake
from .theorem import VerificationReport, count_H_via_decomposition, macmahon, verify

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
METHODS = ("enum", "det", "lgv")


class UsageError(Exception):
    pass


def _frac(q: Fraction | None) -> str | None:
    if q is None:
        return None
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _labels_text(sets: Sequence[frozenset[int]]) -> str:
    return "[" + ",".join("{" + ",".join(map(str, sorted(s))) + "}" for s in sets) + "]"


def spec_text(s: SnowflakeSpec) -> str:
    out = f"n={s.n} x={s.x} A={_labels_text(s.A)} B={_labels_text(s.B)}"
    if s.hole_shift:
        out += f" hole_shift={s.hole_shift}"
    return out


# -- count ----------------------------------------------------------------

def count_by(spec: specfile.Spec, method: str) -> int:
    region = specfile.build(spec)
    if method == "enum":
        return counting.count_enumeration(region)
    if method == "det":
        return counting.count_determinant(region)
    if isinstance(spec, specfile.Hexagon):
        return lgv_count(hexagon_path_system(spec.a, spec.b, spec.c))
    if isinstance(spec, LSpec):
        return count_L_lgv(spec)
    snow = specfile.as_snowflake(spec)
    if snow is not None and snow.hole_shift == 0:
        return count_H_via_decomposition(snow)
    raise UsageError("the lgv method needs a hexagon, H, snowflake or l_region spec")


def cmd_count(args: argparse.Namespace) -> int:
    spec = specfile.load(args.file)
    if args.method == "all":
        methods = [m for m in METHODS if m != "lgv" or _lgv_applies(spec)]
    else:
        methods = [args.method]
    counts = {m: count_by(spec, m) for m in methods}
    agree = len(set(counts.values())) <= 1
    if args.json:
        print(json.dumps({"counts": {m: str(v) for m, v in counts.items()}, "agree": agree}, indent=2))
    else:
        for m, v in counts.items():
            print(f"{m}: {v}")
        if not agree:
            print("methods disagree", file=sys.stderr)
    return EXIT_OK if agree else EXIT_FAIL


def _lgv_applies(spec: specfile.Spec) -> bool:
    if isinstance(spec, (specfile.Hexagon, LSpec)):
        return True
    snow = specfile.as_snowflake(spec)
    return snow is not None and snow.hole_shift == 0


# -- verify / sweep -------------------------------------------------------

def report_dict(rep: VerificationReport) -> dict:
    s = rep.spec
    return {
        "spec": specfile.serialize(s),
        "counts_H": {k: str(v) for k, v in rep.counts_H.items()},
        "counts_Hbar": {k: str(v) for k, v in rep.counts_Hbar.items()},
        "hypothesis_met": rep.hypothesis_met,
        "measured_ratio": _frac(rep.measured),
        "formula_ratio": _frac(rep.formula),
        "geometric_ratio": _frac(rep.geometric),
        "symmetry": [
            {
                "class": sr.tag,
                "count_H": str(sr.count_H),
                "count_Hbar": str(sr.count_Hbar),
                "via_L": None if sr.via_L is None else [str(v) for v in sr.via_L],
                "measured_ratio": _frac(sr.measured),
                "formula_ratio": _frac(sr.formula),
            }
            for sr in rep.symmetry
        ],
        "checks": [{"name": name, "ok": ok} for name, ok in rep.checks],
        "verdict": "pass" if rep.verdict else "fail",
    }


def report_text(rep: VerificationReport) -> str:
    lines = [f"spec: {spec_text(rep.spec)}"]
    for m, v in rep.counts_H.items():
        lines.append(f"M(H)    [{m}]: {v}")
    for m, v in rep.counts_Hbar.items():
        lines.append(f"M(Hbar) [{m}]: {v}")
    if rep.hypothesis_met:
        lines.append(f"measured ratio:  {_frac(rep.measured)}")
    else:
        lines.append("measured ratio:  undefined (hypothesis unmet, M(H) = 0)")
    lines.append(f"formula ratio:   {_frac(rep.formula)}")
    lines.append(f"geometric ratio: {_frac(rep.geometric)}")
    for sr in rep.symmetry:
        lines.append(
            f"class {sr.tag}: M(H)={sr.count_H} M(Hbar)={sr.count_Hbar} "
            f"measured={_frac(sr.measured)} formula={_frac(sr.formula)}"
        )
    for name, ok in rep.checks:
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    lines.append(f"verdict: {'PASS' if rep.verdict else 'FAIL'}")
    return "\n".join(lines)


def _routes(method: str | None) -> tuple[str, ...] | None:
    if method is None:
        return None
    return METHODS if method == "all" else (method,)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.file is None:
        return cmd_sweep(args)
    spec = specfile.load(args.file)
    snow = specfile.as_snowflake(spec)
    if snow is None:
        raise UsageError("verify needs a snowflake or H spec")
    if not snow.flippable():
        raise SpecError("snowflake flipping requires 1 not in A_i & B_i for every i")
    if snow.hole_shift and args.method in ("lgv", "all"):
        raise UsageError("the lgv route ignores hole_shift; use enum or det")
    routes = _routes(args.method)
    if routes is None and snow.hole_shift:
        routes = ("det",)
    rep = verify(snow, routes=routes)
    print(json.dumps(report_dict(rep), indent=2) if args.json else report_text(rep))
    return EXIT_OK if rep.verdict else EXIT_FAIL


def sweep_specs(seed: int, trials: int, n_max: int, x_max: int, cls: str = "any") -> list[SnowflakeSpec]:
    rng = random.Random(seed)
    return [random_snowflake(rng, n_max, x_max, cls) for _ in range(trials)]


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.trials < 0 or args.n_max < 1 or args.x_max < 0:
        raise UsageError("need trials >= 0, n-max >= 1, x-max >= 0")
    specs = sweep_specs(args.seed, args.trials, args.n_max, args.x_max, args.cls or "any")
    routes = _routes(args.method)
    passed = 0
    records = []
    width = len(str(max(args.trials, 1)))
    for idx, s in enumerate(specs):
        rep = verify(s, routes=routes)
        passed += rep.verdict
        if args.json:
            records.append(report_dict(rep))
        else:
            m_h = next(iter(rep.counts_H.values()))
            m_hb = next(iter(rep.counts_Hbar.values()))
            print(
                f"trial {idx + 1:0{width}d}: {spec_text(s)} M(H)={m_h} M(Hbar)={m_hb} "
                f"ratio={_frac(rep.measured) or '-'} {'PASS' if rep.verdict else 'FAIL'}"
            )
    if args.json:
        print(json.dumps({"seed": args.seed, "trials": args.trials, "passed": passed, "reports": records}, indent=2))
    else:
        print(f"{passed}/{args.trials} passed")
    return EXIT_OK if passed == args.trials else EXIT_FAIL


# -- render / macmahon ---------------------------------------------------

def cmd_render(args: argparse.Namespace) -> int:
    spec = specfile.load(args.file)
    region = specfile.build(spec)
    tiling = None
    if args.tiling is not None:
        if args.tiling < 0:
            raise UsageError("tiling index must be nonnegative")
        found = list(itertools.islice(counting.enumerate_tilings(region, cap=args.tiling + 1), args.tiling, None))
        if not found:
            total = counting.count_determinant(region)
            raise UsageError(f"tiling index {args.tiling} out of range: region has {total} tiling(s)")
        tiling = found[0]
    snow = specfile.as_snowflake(spec)
    svg = render_svg(
        region,
        frame=specfile.frame(spec),
        tiling=tiling,
        snowflake=snow,
        dendrites=args.dendrites,
        labels=args.labels,
    )
    Path(args.out).write_text(svg)
    return EXIT_OK


def cmd_macmahon(args: argparse.Namespace) -> int:
    if min(args.a, args.b, args.c) < 0:
        raise UsageError("side lengths must be nonnegative")
    print(macmahon(args.a, args.b, args.c))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lozenge", description="Exact lozenge tiling counts and snowflake ratio checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count tilings of a spec file")
    c.add_argument("file")
    c.add_argument("--method", choices=METHODS + ("all",), default="det")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    def sweep_flags(q: argparse.ArgumentParser) -> None:
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--trials", type=int, default=100)
        q.add_argument("--n-max", type=int, default=3)
        q.add_argument("--x-max", type=int, default=2)
        q.add_argument("--class", dest="cls", choices=("r", "v", "rv"), default=None)
        q.add_argument("--method", choices=METHODS + ("all",), default=None)
        q.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="check the ratio identities on a spec file, or sweep random specs")
    v.add_argument("file", nargs="?")
    sweep_flags(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="verify random admissible specs drawn from a seed")
    sweep_flags(s)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("render", help="write an SVG of a region or one of its tilings")
    r.add_argument("file")
    r.add_argument("--out", required=True)
    r.add_argument("--tiling", type=int, default=None, help="index into the deterministic tiling order")
    r.add_argument("--dendrites", action="store_true")
    r.add_argument("--labels", action="store_true")
    r.set_defaults(func=cmd_render)

    m = sub.add_parser("macmahon", help="MacMahon's box formula")
    m.add_argument("a", type=int)
    m.add_argument("b", type=int)
    m.add_argument("c", type=int)
    m.set_defaults(func=cmd_macmahon)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
