"""Command-line surface.

Exit codes: 0 all checks pass, 1 at least one conjecture check failed,
2 input or usage error, 3 internal error (a proven identity failed).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, InternalError
from .families import FAMILY_NAMES, SERIES_NAMES, build_family, series_identity_check
from .harness import (
    ALL_CHECKS,
    CHECK_DEFS,
    parse_q_samples,
    run_invariants,
    run_sweep,
)
from .points import enumerate_points, points_csv
from .preorder import load_preorder, order_ideals, preorder_to_json
from .report import (
    emit_report,
    render_report_figures,
    render_sweep_figures,
)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ppl",
        description="Exact invariants and conjecture checks for preorder polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="parse and validate a preorder JSON file")
    p_val.add_argument("path")

    p_inv = sub.add_parser("invariants", help="run checks on one preorder")
    p_inv.add_argument("path")
    p_inv.add_argument("--checks", default="all", help="comma list of checks, or 'all'")
    p_inv.add_argument("--out", help="write the report to this file")
    p_inv.add_argument("--format", choices=("json", "csv"), default="json")
    p_inv.add_argument("--figures", help="directory for PNG figures")
    p_inv.add_argument("--points-csv", dest="points_csv", help="dump the lattice points")

    p_sweep = sub.add_parser("sweep", help="run checks over all preorders up to a size")
    p_sweep.add_argument("--max-size", type=int, required=True)
    p_sweep.add_argument("--checks", default="all")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--format", choices=("json", "csv"), default="json")
    p_sweep.add_argument("--figures", help="directory for PNG figures")

    p_fam = sub.add_parser("family", help="emit a named family member as JSON")
    p_fam.add_argument("name", choices=FAMILY_NAMES)
    p_fam.add_argument("--n", type=int, required=True)
    p_fam.add_argument("--m", type=int)
    p_fam.add_argument("--k", type=int)
    p_fam.add_argument("--emit", help="output file (default: stdout)")

    p_ser = sub.add_parser("series", help="check a generating-function identity")
    p_ser.add_argument("name", choices=SERIES_NAMES)
    p_ser.add_argument("--order", type=int, required=True)
    p_ser.add_argument("--k", type=int)
    return parser


def _parse_checks(text):
    if text == "all":
        return None
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    for name in names:
        if name not in CHECK_DEFS:
            raise InputError(
                f"unknown check {name!r}; known: {', '.join(ALL_CHECKS)}"
            )
    return names


def _q_samples(args):
    import os

    text = os.environ.get("PPL_Q_SAMPLES")
    return parse_q_samples(text) if text else None


def _exit_code(reports):
    for rep in reports:
        if rep.failures(include_diagnostic=False):
            return 1
    return 0


def _cmd_validate(args):
    tau, names = load_preorder(args.path)
    fam = order_ideals(tau)
    print(
        f"ok: size {tau.n}, {tau.k} vertices, {len(fam)} order ideals, "
        f"key {tau.canonical_key}"
    )
    return 0


def _cmd_invariants(args):
    tau, _names = load_preorder(args.path)
    checks = _parse_checks(args.checks)
    report = run_invariants(tau, checks, q_samples=_q_samples(args))
    text = emit_report([report], fmt=args.format, path=args.out)
    if not args.out:
        print(text)
    else:
        fails = report.failures(include_diagnostic=False)
        status = "FAIL: " + ",".join(fails) if fails else "all checks pass"
        print(f"{report.tau_key}: {status} ({args.out})")
    if args.points_csv:
        with open(args.points_csv, "w", encoding="utf-8") as fh:
            fh.write(points_csv(enumerate_points(tau, 1, 0)))
    if args.figures:
        for path in render_report_figures(report, args.figures):
            print(f"figure: {path}")
    return _exit_code([report])


def _cmd_sweep(args):
    checks = _parse_checks(args.checks)
    reports, summary = run_sweep(
        args.max_size, checks, jobs=args.jobs, q_samples=_q_samples(args)
    )
    emit_report(reports, fmt=args.format, path=args.out)
    for name in sorted(summary):
        if name.startswith("_"):
            continue
        counts = summary[name]
        print(
            f"{name}: pass={counts['pass'] + counts['sampled_pass']} "
            f"fail={counts['fail']} n/a={counts['not_applicable']}"
        )
    failing = summary["_failing_checks"]
    print(
        f"{summary['_report_count']} preorders; "
        + ("zero failing checks" if not failing else "FAILING: " + ",".join(failing))
    )
    if args.figures:
        for path in render_sweep_figures(reports, summary, args.figures):
            print(f"figure: {path}")
    return _exit_code(reports)


def _cmd_family(args):
    tau = build_family(args.name, n=args.n, m=args.m, k=args.k)
    text = json.dumps(preorder_to_json(tau), indent=2, sort_keys=True)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.emit} (size {tau.n}, key {tau.canonical_key})")
    else:
        print(text)
    return 0


def _cmd_series(args):
    ok = series_identity_check(args.name, args.order, k=args.k)
    print(f"{args.name} order {args.order}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "invariants": _cmd_invariants,
        "sweep": _cmd_sweep,
        "family": _cmd_family,
        "series": _cmd_series,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
