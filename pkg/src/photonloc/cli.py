"""Command line: ``photonloc verify | show | eval``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import poincare as pc
from . import verifier as v
from .exprcore import SamplePlan, SingularPointError
from .operators import apply


def _shell(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN,MAX, got {text!r}")
    return lo, hi


def _point(text: str) -> tuple[float, float, float]:
    try:
        xs = tuple(float(x) for x in text.strip().strip("()[]").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a point like (1,0,0), got {text!r}")
    if len(xs) != 3:
        raise argparse.ArgumentTypeError(f"expected three coordinates, got {text!r}")
    return xs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="photonloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run identity suites and report")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=64)
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument("--shell", type=_shell, default=(0.5, 2.0))
    ver.add_argument("--axis-margin", type=float, default=0.1)
    ver.add_argument("--suite", default="all", choices=("all",) + v.SUITES)
    ver.add_argument("--rep", choices=pc.REPRESENTATIONS)
    ver.add_argument("--operator", choices=tuple(v.POSITION_OPERATORS))
    ver.add_argument("--format", default="structured", choices=("structured", "summary"))

    show = sub.add_parser("show", help="print an operator from the catalog")
    show.add_argument("name")

    ev = sub.add_parser("eval", help="apply an operator to a catalog function at a point")
    ev.add_argument("name")
    ev.add_argument("point", type=_point)
    ev.add_argument("wavefn")
    return parser


def cmd_verify(args, parser) -> int:
    if not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must be an unsigned 64-bit integer")
    if args.samples < 1:
        parser.error("--samples must be positive")
    if not args.tol > 0:
        parser.error("--tol must be positive")
    try:
        SamplePlan(args.seed, args.samples, args.shell, args.axis_margin)
    except ValueError as exc:
        parser.error(str(exc))
    cfg = v.ReportConfig(args.seed, args.samples, args.tol, args.shell, args.axis_margin)
    suites = None if args.suite == "all" else (args.suite,)
    report = v.full_report(cfg, suites, args.rep, args.operator)
    render = v.render_structured if args.format == "structured" else v.render_summary
    sys.stdout.write(render(report))
    return 0 if report["verdict"] == "success" else 1


def cmd_show(args) -> int:
    try:
        print(pc.show(args.name))
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    return 0


def _fmt(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def cmd_eval(args) -> int:
    cat = pc.operator_catalog()
    fns = pc.wavefn_catalog()
    if args.name not in cat:
        print(f"error: unknown operator {args.name!r}; catalog: {', '.join(sorted(cat))}", file=sys.stderr)
        return 2
    if args.wavefn not in fns:
        print(f"error: unknown function {args.wavefn!r}; catalog: {', '.join(sorted(fns))}", file=sys.stderr)
        return 2
    f = fns[args.wavefn]
    try:
        for k, op in enumerate(cat[args.name]):
            vals = apply(op, f)(np.array(args.point))
            label = args.name if len(cat[args.name]) == 1 else f"{args.name}[{k + 1}]"
            print(f"{label} {args.wavefn} at {args.point}: (" + ", ".join(_fmt(z) for z in vals) + ")")
    except SingularPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args, parser)
    if args.command == "show":
        return cmd_show(args)
    return cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
