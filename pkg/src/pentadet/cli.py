"""``pentadet`` command line.

Results go to stdout as JSON, diagnostics to stderr.  Exit codes:
0 success, 1 route disagreement or table mismatch, 2 malformed input,
3 method hypothesis or range violated, 4 zero pivot under a forced method.
"""
from __future__ import annotations

import argparse
import json
import sys

from .dispatch import METHODS, MethodUnavailable, compute, run_bench, run_verify
from .errors import PivotZero, RangeError, SchemaError, ShapeError
from .poly import reference_pn, symbolic_d_polynomial, verify_pn
from .model import load_spec

EXIT_MISMATCH = 1
EXIT_SCHEMA = 2
EXIT_HYPOTHESIS = 3
EXIT_PIVOT = 4


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _fail(code: int, message: str, **extra) -> int:
    print(f"pentadet: {message}", file=sys.stderr)
    _emit({"error": message, **extra})
    return code


def cmd_compute(args) -> int:
    if args.bench:
        _emit(run_bench())
        return 0
    if not args.input:
        return _fail(EXIT_SCHEMA, "compute needs --input (or --bench)")
    try:
        with open(args.input, encoding="utf-8") as fh:
            spec = load_spec(fh.read())
    except OSError as exc:
        return _fail(EXIT_SCHEMA, f"cannot read {args.input}: {exc}")
    except SchemaError as exc:
        return _fail(EXIT_SCHEMA, f"schema error: {exc}")
    try:
        result = compute(spec, args.method, args.scalar)
    except PivotZero as exc:
        return _fail(EXIT_PIVOT, str(exc), pivot={"j": exc.j, "s": exc.s})
    except MethodUnavailable as exc:
        return _fail(EXIT_HYPOTHESIS, f"method {args.method} not applicable: {exc}")
    except ShapeError as exc:
        return _fail(EXIT_HYPOTHESIS, f"invalid shape: {exc}")
    _emit(result.to_dict(with_timings=args.timings))
    return 0


def cmd_verify(args) -> int:
    try:
        report = run_verify(args.n_max, args.cases, args.seed, inject_bug=args.inject_bug)
    except ValueError as exc:
        return _fail(EXIT_SCHEMA, str(exc))
    _emit(report)
    if report["failed"]:
        print(f"pentadet: {report['failed']} of {report['cases']} cases disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


def cmd_poly(args) -> int:
    if args.n == "all":
        orders = list(range(3, 10))
    else:
        try:
            orders = [int(args.n)]
            reference_pn(orders[0])
        except (ValueError, RangeError) as exc:
            return _fail(EXIT_HYPOTHESIS, f"range error: {exc}")
    results = []
    for n in orders:
        rep = verify_pn(n)
        entry = {"n": n, "equal": rep.equal, "diff": rep.diff.to_text()}
        if args.emit:
            entry["polynomial"] = symbolic_d_polynomial(n).to_text()
        results.append(entry)
    all_equal = all(e["equal"] for e in results)
    _emit({"comparisons": len(results), "all_equal": all_equal, "results": results})
    return 0 if all_equal else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentadet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="determinant of a matrix described in JSON")
    p.add_argument("--input", help="JSON spec file")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--scalar", choices=("rational", "float"), default="rational")
    p.add_argument("--timings", action="store_true", help="include per-method wall times")
    p.add_argument("--bench", action="store_true", help="time structured vs dense routes")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="cross-check all routes on random specs")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("poly", help="regenerate and check the D(n) polynomial tables")
    p.add_argument("--n", default="all", help="3..9 or 'all'")
    p.add_argument("--emit", action="store_true", help="include the polynomial text")
    p.set_defaults(func=cmd_poly)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
