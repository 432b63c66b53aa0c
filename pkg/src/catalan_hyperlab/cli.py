"""Command-line front end: evaluate functions, verify identities, print the catalog.

Grammar ::  catalan-hyperlab <eval|verify|catalog> [args] [flags]

All floating-point output carries 15 significant digits; in JSON mode the
numbers are emitted as decimal strings of the same precision so reports
do not drift across serializers.  Exit codes: 0 all passed, 1 evaluation
failure or any identity failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import elliptic, identities, integrals, sfcore
from .result import EvalResult, IntegrandError, NonConvergenceError

EVAL_NAMES = ("K", "E", "pfq", "A", "B", "C", "D", "G")


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _param_json(p) -> Optional[str]:
    if p is None:
        return None
    if isinstance(p, str):
        return p
    return _fmt(p)


def _record_json(r: identities.VerificationResult, citation: str) -> dict:
    return {
        "id": r.identity_id,
        "citation": citation,
        "param": _param_json(r.param),
        "lhs": _fmt(r.lhs_value),
        "rhs": _fmt(r.rhs_value),
        "abs_residual": _fmt(r.abs_residual),
        "rel_residual": _fmt(r.rel_residual),
        "tol": _fmt(r.tol),
        "pass": r.passed,
        "lhs_method": r.lhs_method,
        "rhs_method": r.rhs_method,
        "effort": r.effort,
        **({"error": r.error} if r.error else {}),
    }


def report_json(report: identities.Report) -> dict:
    """The stable JSON rendering of a verification report.

    The timestamp is the only non-deterministic field; wallclock is kept
    out of the document for that reason.
    """
    citations = {i.id: i.citation for i in identities.registry()}
    return {
        "version": report.version,
        "timestamp": report.timestamp,
        "records": [_record_json(r, citations[r.identity_id]) for r in report.records],
        "summary": {
            "total": report.total,
            "passed": report.passed,
            "failed": report.failed,
            "worst_residual": _fmt(report.worst_residual),
        },
    }


def _print_result(name: str, args: list[float], res: EvalResult, as_json: bool) -> None:
    if as_json:
        doc = {
            "name": name,
            "args": [_fmt(a) for a in args],
            "value": _fmt(res.value),
            "err_estimate": _fmt(res.err_estimate),
            "method": res.method,
            "effort": res.effort,
            "converged": res.converged,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        call = f"{name}({', '.join(_fmt(a) for a in args)})"
        print(f"{call} = {_fmt(res.value)}  err<={res.err_estimate:.2e}  method={res.method}  effort={res.effort}")


def _cmd_eval(args: argparse.Namespace) -> int:
    name = args.name
    vals = args.args
    try:
        if name in ("K", "E"):
            if len(vals) != 1:
                raise UsageError(f"{name} takes exactly one argument (the modulus)")
            fn = elliptic.ellipk if name == "K" else elliptic.ellipe
            v = fn(vals[0])
            res = EvalResult(v, 4e-16 * (1.0 + abs(v)), 1, True, "agm")
        elif name in ("A", "B", "C", "D"):
            if len(vals) != 1:
                raise UsageError(f"{name} takes exactly one argument (the parameter s)")
            res = integrals.parametric_integral(name, vals[0], tol=args.tol, max_level=args.quad_level)
        elif name == "G":
            if vals:
                raise UsageError("G takes no positional arguments; choose a route with --method")
            res = integrals.catalan_result(args.method)
        elif name == "pfq":
            if len(vals) != 1 or args.upper is None or args.lower is None:
                raise UsageError("pfq needs the argument x plus --upper and --lower parameter lists")
            params = sfcore.PFQParams(args.upper, args.lower, vals[0])
            res = sfcore.pfq(params, args.tol)
        else:
            raise UsageError(f"unknown function {name!r}; expected one of {', '.join(EVAL_NAMES)}")
    except UsageError:
        raise
    except (ValueError, NonConvergenceError, IntegrandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_result(name, vals, res, args.json)
    return 0


def _parse_grid(text: str) -> tuple:
    try:
        lo, hi, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"--grid expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError("--grid needs step > 0 and hi >= lo")
    points = []
    k = 0
    while True:
        s = lo + k * step
        if s > hi + 1e-12:
            break
        points.append(round(s, 12))
        k += 1
    if not points:
        raise UsageError("--grid produced no points")
    return tuple(points)


def _cmd_verify(args: argparse.Namespace) -> int:
    known = {i.id for i in identities.registry()}
    if args.all:
        ids = None
    else:
        if not args.ids:
            raise UsageError("give identity ids or --all")
        unknown = [i for i in args.ids if i not in known]
        if unknown:
            valid = ", ".join(sorted(known))
            print(f"unknown identity ids: {', '.join(unknown)}\nvalid ids: {valid}", file=sys.stderr)
            return 2
        ids = args.ids
    grid = _parse_grid(args.grid) if args.grid else None
    report = identities.verify_all(
        tol_scale=args.tol_scale,
        ids=ids,
        grid=grid,
        max_workers=args.jobs,
        tol_override=args.tol,
    )
    if args.json:
        print(json.dumps(report_json(report), indent=2, sort_keys=True))
    else:
        header = f"{'id':24s} {'param':15s} {'lhs':>22s} {'rhs':>22s} {'abs_resid':>10s}  ok"
        print(header)
        print("-" * len(header))
        for r in report.records:
            p = "-" if r.param is None else str(r.param)
            ok = "PASS" if r.passed else "FAIL"
            line = f"{r.identity_id:24s} {p:15s} {_fmt(r.lhs_value):>22s} {_fmt(r.rhs_value):>22s} {r.abs_residual:10.2e}  {ok}"
            if r.error:
                line += f"  ({r.error})"
            print(line)
        print(
            f"\nidentities: {report.total}  passed: {report.passed}  failed: {report.failed}  "
            f"worst residual: {report.worst_residual:.3e}  wallclock: {report.wallclock:.2f}s"
        )
    return 0 if report.failed == 0 else 1


def _spec_json(spec: identities.EvalSpec) -> dict:
    return {"route": spec.route, "params": spec.params}


def _cmd_catalog(args: argparse.Namespace) -> int:
    entries = identities.registry()
    if args.json:
        doc = [
            {
                "id": i.id,
                "description": i.description,
                "citation": i.citation,
                "tol": _fmt(i.tol),
                "points": [_param_json(p) for p in i.points],
                "lhs": _spec_json(i.lhs),
                "rhs": _spec_json(i.rhs),
            }
            for i in entries
        ]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for i in entries:
            npts = len(i.points)
            print(f"{i.id:24s} tol={i.tol:.0e}  points={npts}  {i.citation}")
    return 0


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catalan-hyperlab",
        description="Evaluate and cross-verify Catalan-constant, elliptic and hypergeometric identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one function")
    p_eval.add_argument("name", choices=EVAL_NAMES)
    p_eval.add_argument("args", nargs="*", type=float)
    p_eval.add_argument("--method", default="beta_series", choices=integrals.CATALAN_METHODS,
                        help="route for G")
    p_eval.add_argument("--upper", nargs="+", type=float, help="pfq upper parameters")
    p_eval.add_argument("--lower", nargs="+", type=float, help="pfq lower parameters")
    p_eval.add_argument("--tol", type=float, default=1e-11, help="evaluation tolerance")
    p_eval.add_argument("--quad-level", type=int, default=10, help="tanh-sinh refinement cap")
    p_eval.add_argument("--max-terms", type=int, default=None, help="accepted for symmetry; series caps are internal")
    p_eval.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="verify identities")
    p_verify.add_argument("ids", nargs="*")
    p_verify.add_argument("--all", action="store_true", help="verify the whole registry")
    p_verify.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
    p_verify.add_argument("--tol-scale", type=float, default=1.0, help="scale every identity tolerance")
    p_verify.add_argument("--grid", default=None, help="lo:hi:step override for s-parametric identities")
    p_verify.add_argument("--jobs", type=int, default=None, help="verify identities concurrently")
    p_verify.add_argument("--json", action="store_true")

    p_catalog = sub.add_parser("catalog", help="print the identity registry")
    p_catalog.add_argument("--json", action="store_true")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_catalog(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
