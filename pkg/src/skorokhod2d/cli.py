"""Command-line front end.

Machine-readable JSON goes to stdout, human summaries to stderr. Exit codes:
0 success (and pass=true where a verdict applies), 1 verification failure,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import serialize
from .classify import ReflectionMatrix2, classify
from .counterexample import build_counterexample, check_identities, solution_gap
from .dyadic import Dyadic
from .errors import (
    ConstructionError,
    DomainError,
    ExactnessError,
    InvalidMatrixError,
    StepInfeasibleError,
    UsageError,
)
from .figure import emit_figure
from .solver import SolveConfig, solve_fixed_point, solve_grid
from .verifier import compare_solutions, verify

_PKG_ERRORS = (
    UsageError,
    DomainError,
    InvalidMatrixError,
    ConstructionError,
    ExactnessError,
    StepInfeasibleError,
    OSError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
    ZeroDivisionError,
)


def _parse_number(text: str, exact: bool):
    if exact:
        return Dyadic.from_fraction(Fraction(text))
    return float(Fraction(text))


def _parse_matrix(text: str, exact: bool) -> ReflectionMatrix2:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--matrix expects 'a1,a2'")
    return ReflectionMatrix2(
        _parse_number(parts[0], exact), _parse_number(parts[1], exact)
    )


def _parse_tol(text: str):
    fr = Fraction(text)
    return 0 if fr == 0 else float(fr)


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# --- subcommand handlers -----------------------------------------------------


def _cmd_classify(args) -> int:
    R = _parse_matrix(f"{args.a1},{args.a2}", args.exact)
    c = classify(R)
    _emit(
        {
            "completely_s": c.completely_s,
            "radius": c.radius,
            "radius_exact": c.radius_exact,
            "regime": c.regime.value,
            "critical_caveat": c.critical_caveat,
            "uniqueness_note": c.uniqueness_note,
        }
    )
    _note(f"regime {c.regime.value}, radius {c.radius:.12g}: {c.uniqueness_note}")
    return 0


def _cmd_solve(args) -> int:
    R = _parse_matrix(args.matrix, exact=False)
    f = serialize.path_from_json(json.loads(Path(args.f).read_text()))
    grid = None
    if args.grid_steps:
        t0, t1 = float(f.start_time), float(f.end_time)
        grid = np.linspace(t0, t1, args.grid_steps + 1)
    cfg = SolveConfig(tol=args.tol, max_iter=args.max_iter, grid=grid, damping=args.damping)
    if args.method == "fixed":
        res = solve_fixed_point(R, f, cfg)
    else:
        res = solve_grid(R, f, cfg)
    doc = serialize.solution_to_json(
        res.g, res.m, res.iterations, res.converged, res.residual
    )
    if args.out:
        Path(args.out).write_text(json.dumps(doc, sort_keys=True))
    _emit(doc)
    _note(
        f"{args.method} solver: {res.iterations} iterations, "
        f"converged={res.converged}, residual={res.residual:.3g}"
    )
    return 0


def _cmd_counterexample(args) -> int:
    a1 = _parse_number(args.a1, exact=False)
    try:
        a1 = Dyadic.from_fraction(Fraction(args.a1))
    except ExactnessError:
        pass
    bundle = build_counterexample(a1, args.depth)
    doc = {
        "a1": float(bundle.R.a1),
        "depth": bundle.depth,
        "mode": bundle.u.mode,
        "tail_bound": float(bundle.tail_bound),
        "gap_at_end": [float(x) for x in solution_gap(bundle)],
        "identities_ok": check_identities(bundle),
    }
    ok = True
    if args.verify:
        tol = 0 if bundle.u.mode == "exact" else 2.0**-40
        r1 = verify(bundle.triple(), tol)
        r2 = verify(bundle.triple_bar(), tol)
        doc["verify"] = r1.to_json()
        doc["verify_bar"] = r2.to_json()
        ok = r1.passed and r2.passed
    if args.out:
        Path(args.out).write_text(
            json.dumps(serialize.bundle_to_json(bundle), sort_keys=True)
        )
    if args.figure:
        Path(args.figure).write_text(emit_figure(bundle, min_time=args.min_time))
    _emit(doc)
    _note(
        f"counterexample a1={doc['a1']}, depth={bundle.depth}: "
        f"gap at t=1 is {doc['gap_at_end']}"
    )
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    triple = serialize.triple_from_json(json.loads(Path(args.triple).read_text()))
    if args.matrix:
        R = _parse_matrix(args.matrix, exact=triple.f.mode == "exact")
        triple = type(triple)(R, triple.f, triple.g, triple.m, triple.tail_bound)
    report = verify(triple, args.tol, strict=args.strict)
    _emit(report.to_json())
    _note(f"verification {'passed' if report.passed else 'FAILED'} at tol={args.tol}")
    return 0 if report.passed else 1


def _cmd_compare(args) -> int:
    s1 = serialize.triple_from_json(json.loads(Path(args.s1).read_text()))
    s2 = serialize.triple_from_json(json.loads(Path(args.s2).read_text()))
    diag = compare_solutions(s1, s2, args.tol)
    _emit(diag.to_json())
    _note(
        f"max_v={float(diag.max_v):.6g}, "
        f"v_monotone_on_support={diag.v_monotone_on_support}"
    )
    return 0


def _cmd_figure(args) -> int:
    a1 = _parse_number(args.a1, exact=False)
    try:
        a1 = Dyadic.from_fraction(Fraction(args.a1))
    except ExactnessError:
        pass
    bundle = build_counterexample(a1, args.depth)
    svg = emit_figure(
        bundle, size=args.size, coord_range=args.range, min_time=args.min_time
    )
    Path(args.out).write_text(svg)
    _emit({"out": args.out, "breakpoints": len(bundle.u)})
    _note(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="skorokhod2d",
        description="Solve, classify and verify two-dimensional Skorokhod problems.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="regime classification of a reflection matrix")
    c.add_argument("--a1", required=True)
    c.add_argument("--a2", required=True)
    c.add_argument("--exact", action="store_true")
    c.set_defaults(handler=_cmd_classify)

    s = sub.add_parser("solve", help="solve the Skorokhod problem numerically")
    s.add_argument("--matrix", required=True, help="a1,a2")
    s.add_argument("--f", required=True, help="driving path JSON file")
    s.add_argument("--method", choices=("fixed", "grid"), default="fixed")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--max-iter", type=int, default=10000)
    s.add_argument("--damping", type=float, default=1.0)
    s.add_argument("--grid-steps", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(handler=_cmd_solve)

    ce = sub.add_parser("counterexample", help="build the non-uniqueness bundle")
    ce.add_argument("--a1", default="-2")
    ce.add_argument("--depth", type=int, default=40)
    ce.add_argument("--verify", action="store_true")
    ce.add_argument("--out")
    ce.add_argument("--figure")
    ce.add_argument("--min-time", type=float, default=None)
    ce.set_defaults(handler=_cmd_counterexample)

    v = sub.add_parser("verify", help="certify a candidate solution triple")
    v.add_argument("--triple", required=True)
    v.add_argument("--matrix")
    v.add_argument("--tol", type=_parse_tol, default=0)
    v.add_argument("--strict", action="store_true")
    v.set_defaults(handler=_cmd_verify)

    cp = sub.add_parser("compare", help="uniqueness diagnostics for two solutions")
    cp.add_argument("--s1", required=True)
    cp.add_argument("--s2", required=True)
    cp.add_argument("--tol", type=_parse_tol, default=0)
    cp.set_defaults(handler=_cmd_compare)

    fg = sub.add_parser("figure", help="emit the spiral SVG figure")
    fg.add_argument("--a1", default="-2")
    fg.add_argument("--depth", type=int, default=28)
    fg.add_argument("--out", required=True)
    fg.add_argument("--size", type=int, default=640)
    fg.add_argument("--range", type=float, default=None)
    fg.add_argument("--min-time", type=float, default=None)
    fg.set_defaults(handler=_cmd_figure)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _PKG_ERRORS as exc:
        _note(f"error: {exc}")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
