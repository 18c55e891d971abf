"""Command-line entry point.

All numeric flags take exact rationals ("p/q" or integers); decimal input
is rejected so no precision is lost before the exact computations run.
Outputs are JSON (gap lists, gamma results, suite reports) or CSV
(profiles); decimals appear in outputs for convenience only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .intervals import GapList
from .oracles import OracleConfig, SUITE_NAMES, report_to_json, run_suite
from .porosity import (
    PROFILE_CSV_HEADER,
    delta_product,
    epsilon_net_check,
    gamma,
    profile_csv,
    scale_profile,
)
from .rat import dec_str, parse_rat, rat_str
from .ternary import (
    DEFAULT_GAP_CAP,
    SetSpecExpr,
    boundary_points_in_window,
    build_truncation,
    parse_set_spec,
)

ENV_CAP = "POROSITY_DEPTH_CAP"


class UsageError(Exception):
    pass


def _gap_cap() -> int:
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return DEFAULT_GAP_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{ENV_CAP} must be an integer, got {raw!r}") from exc


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _spec(text: str) -> SetSpecExpr:
    try:
        return parse_set_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _gaps_json(gaps: GapList) -> list[list[str]]:
    return [[rat_str(g.lo), rat_str(g.hi)] for g in gaps]


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_gaps(args: argparse.Namespace) -> int:
    expr = args.set
    trunc = build_truncation(expr.spec, expr.depth, cap=_gap_cap())
    if args.window is not None:
        lo, hi = args.window
        gaps = trunc.gaps_in_window(lo, hi)
    else:
        if trunc.materialized is None:
            raise UsageError(
                "set too large to materialize; use --window for lazy access"
            )
        gaps = trunc.materialized
    payload = {"set": str(expr), "gaps": _gaps_json(gaps)}
    _emit(json.dumps(payload, indent=2), None)
    return 0


def _cmd_gamma(args: argparse.Namespace) -> int:
    expr = args.set
    trunc = build_truncation(expr.spec, expr.depth, cap=0)  # lazy is enough
    res = gamma(trunc, args.x, args.h)
    payload = {
        "set": str(expr),
        "x": rat_str(args.x),
        "h": rat_str(args.h),
        "value": rat_str(res.value),
        "value_dec": dec_str(res.value),
        "witness_center": None
        if res.witness_center is None
        else rat_str(res.witness_center),
        "depth_used": res.depth_used,
        "stabilized": res.stabilized,
    }
    _emit(json.dumps(payload, indent=2), None)
    return 0


def _profile_grid(h_max: Fraction, ratio: Fraction, count: int) -> list[Fraction]:
    if h_max <= 0:
        raise UsageError("--h-max must be positive")
    if not 0 < ratio < 1:
        raise UsageError("--ratio must lie strictly between 0 and 1")
    if count < 1:
        raise UsageError("--count must be >= 1")
    return [h_max * ratio**k for k in range(count)]


def _cmd_profile(args: argparse.Namespace) -> int:
    expr = args.set
    trunc = build_truncation(expr.spec, expr.depth, cap=0)
    grid = _profile_grid(args.h_max, args.ratio, args.count)
    prof = scale_profile(trunc, args.x, grid)
    _emit(profile_csv(prof), args.out)
    return 0


def _cmd_product_profile(args: argparse.Namespace) -> int:
    expr_a = args.set_a
    expr_b = args.set_b
    set_a = build_truncation(expr_a.spec, expr_a.depth, cap=0)
    set_b = build_truncation(expr_b.spec, expr_b.depth, cap=0)
    grid = _profile_grid(args.h_max, args.ratio, args.count)
    prof_a = scale_profile(set_a, args.x, grid)
    prof_b = scale_profile(set_b, args.y, grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        [
            "h_rat",
            "h_dec",
            "delta_a_rat",
            "delta_b_rat",
            "delta_prod_rat",
            "delta_prod_dec",
            "stabilized",
        ]
    )
    for sa, sb in zip(prof_a.samples, prof_b.samples):
        dp = delta_product(sa.delta, sb.delta)
        writer.writerow(
            [
                rat_str(sa.h),
                dec_str(sa.h),
                rat_str(sa.delta),
                rat_str(sb.delta),
                rat_str(dp),
                dec_str(dp),
                "true" if sa.stabilized and sb.stabilized else "false",
            ]
        )
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_net_check(args: argparse.Namespace) -> int:
    points = boundary_points_in_window(args.level, Fraction(0), Fraction(1))
    ok = epsilon_net_check(points, args.eps, Fraction(0), Fraction(1))
    _emit("true" if ok else "false", None)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    config = OracleConfig(grid_step=args.step, depth=args.oracle_depth)
    report = run_suite(args.suite, config=config, seed=args.seed)
    _emit(report_to_json(report), args.out)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porosity",
        description="Exact porosity computations on ternary gap sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gaps", help="print a (windowed) gap list as JSON")
    p.add_argument("--set", type=_spec, required=True)
    p.add_argument(
        "--window", type=_rat, nargs=2, metavar=("LO", "HI"), default=None
    )
    p.set_defaults(func=_cmd_gaps)

    p = sub.add_parser("gamma", help="exact largest-empty-ball radius as JSON")
    p.add_argument("--set", type=_spec, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--h", type=_rat, required=True)
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("profile", help="write a delta scale profile as CSV")
    p.add_argument("--set", type=_spec, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--h-max", type=_rat, default=Fraction(4, 3))
    p.add_argument("--ratio", type=_rat, default=Fraction(1, 3))
    p.add_argument("--count", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser(
        "product-profile", help="write a max-metric product delta profile as CSV"
    )
    p.add_argument("--set-a", type=_spec, required=True)
    p.add_argument("--set-b", type=_spec, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--y", type=_rat, required=True)
    p.add_argument("--h-max", type=_rat, default=Fraction(4, 3))
    p.add_argument("--ratio", type=_rat, default=Fraction(1, 3))
    p.add_argument("--count", type=int, default=12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_product_profile)

    p = sub.add_parser(
        "net-check", help="is the level-n boundary an eps-net in [0,1]?"
    )
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--eps", type=_rat, required=True)
    p.set_defaults(func=_cmd_net_check)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", choices=SUITE_NAMES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=_rat, default=Fraction(1, 3**9))
    p.add_argument("--oracle-depth", type=int, default=6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; preserve both
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
