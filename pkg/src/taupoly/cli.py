"""Command-line front end.

Three commands over a problem file:

* ``solve``   -- run the tau-method pipeline, print y_n and diagnostics.
* ``analyze`` -- near-optimality ratio table over a degree sweep.
* ``taylor``  -- exact Taylor polynomial of the solution at a degree.

Exit codes: 0 success, 1 I/O failure, 2 problem-text rejection (or
missing required arguments), 3 method failure (degree too small,
singular system, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from mpmath import mp

from .analysis import (
    DEFAULT_CONFIG,
    NORM_KINDS,
    PrecisionConfig,
    RatioFailure,
    RatioRow,
    SUP_NORM,
    convergence_table,
    reference_derivative_samples,
)
from .errors import MethodError, ParseError
from .ode import IvpProblem, taylor_reference
from .parser import ParseResult, ProblemSource, parse_source, render_poly
from .polynomial import Poly
from .solver import TauSolution, tau_solve

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_METHOD = 3


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        output = _run(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MethodError as exc:
        print(f"method error: {exc}", file=sys.stderr)
        return EXIT_METHOD

    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(output + "\n")
        else:
            print(output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


class _UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taupoly",
        description="Tau-method polynomial solver for linear ODE initial-value "
                    "problems with polynomial coefficients.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem description file")
    common.add_argument("--degree", type=_positive_int, default=None,
                        help="override the file's degree (taylor: the Taylor degree)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--precision-bits", type=_positive_int, default=None,
                        help="working precision for analysis (default 192)")
    common.add_argument("--grid", type=_positive_int, default=None,
                        help="evaluation grid size for analysis (default 4097)")
    common.add_argument("-o", "--output", default=None,
                        help="write output to this path instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common],
                   help="compute the tau-method approximation")
    analyze = sub.add_parser("analyze", parents=[common],
                             help="near-optimality ratio table")
    analyze.add_argument("--norm", choices=NORM_KINDS, default=SUP_NORM)
    sub.add_parser("taylor", parents=[common],
                   help="exact Taylor polynomial of the solution (--degree required)")
    return parser


def _load(args) -> ParseResult:
    with open(args.file, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_source(ProblemSource(text=text, origin=args.file))


def _config(args) -> PrecisionConfig:
    return PrecisionConfig(
        working_bits=args.precision_bits or DEFAULT_CONFIG.working_bits,
        grid_size=args.grid or DEFAULT_CONFIG.grid_size,
    )


def _run(args) -> str:
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "taylor":
        return _cmd_taylor(args)
    raise _UsageError(f"unknown command {args.command!r}")


# --- solve ----------------------------------------------------------------


def _pairs(p: Poly) -> list[list[str]]:
    return [[str(c.numerator), str(c.denominator)] for c in p.coeffs]


def _fraction_pair(value: Fraction) -> list[str]:
    return [str(value.numerator), str(value.denominator)]


def _cmd_solve(args) -> str:
    problem = _load(args).problem
    if args.degree is not None:
        problem = replace(problem, degree=args.degree)
    solution = tau_solve(problem)
    if args.format == "json":
        return json.dumps(_solution_json(solution), indent=2)
    return _solution_text(solution)


def _solution_json(sol: TauSolution) -> dict:
    params = sol.params
    return {
        "y_n": _pairs(sol.y_n),
        "u_p": _pairs(sol.u_p),
        "tau": [_fraction_pair(t) for t in sol.tau],
        "params": {"k": params.k, "l": params.l, "s": params.s,
                   "p": params.p, "r": params.r, "m": params.m},
        "residual_verified": sol.residual_verified,
        "warnings": list(sol.warnings),
    }


def _solution_text(sol: TauSolution) -> str:
    params = sol.params
    tau = ", ".join(str(t) for t in sol.tau) if sol.tau else "none"
    lines = [
        f"y_n: {render_poly(sol.y_n)}",
        f"u_p: {render_poly(sol.u_p)}",
        f"tau: {tau}",
        f"params: k={params.k} l={params.l} s={params.s} "
        f"p={params.p} r={params.r} m={params.m}",
        f"residual_verified: {'true' if sol.residual_verified else 'false'}",
    ]
    for warning in sol.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines)


# --- taylor -----------------------------------------------------------------


def _cmd_taylor(args) -> str:
    if args.degree is None:
        raise _UsageError("taylor requires --degree N (the Taylor degree)")
    problem = _load(args).problem
    reference = taylor_reference(problem, args.degree)
    if args.format == "json":
        return json.dumps({"degree": args.degree, "taylor": _pairs(reference)},
                          indent=2)
    return render_poly(reference)


# --- analyze ----------------------------------------------------------------


def _cmd_analyze(args) -> str:
    result = _load(args)
    problem = result.problem
    config = _config(args)
    s = problem.integration_order()
    if args.degree is not None:
        degrees = [args.degree]
    else:
        degrees = list(range(s + 1, problem.degree + 1, 2))
        if not degrees:
            raise _UsageError(
                f"no admissible sweep degrees: the file's n={problem.degree} "
                f"is below the first admissible degree {s + 1}"
            )
    reference_degree = result.reference_taylor_degree or 2 * max(degrees) + 20
    reference = reference_derivative_samples(problem, reference_degree, config)
    rows = convergence_table(problem, reference, degrees, args.norm, config)
    if args.format == "json":
        return json.dumps([_row_json(row) for row in rows], indent=2)
    return _table_text(rows)


def _format_real(value) -> str:
    return mp.nstr(value, 8)


def _row_json(row) -> dict:
    if isinstance(row, RatioFailure):
        return {"n": row.n, "error": row.error}
    return {
        "n": row.n,
        "numerator": _format_real(row.numerator),
        "denominator": _format_real(row.denominator),
        "ratio": _format_real(row.ratio),
        "norm": row.norm_kind,
    }


def _table_text(rows) -> str:
    lines = [f"{'n':>4}  {'numerator':>14}  {'denominator':>14}  {'ratio':>10}  norm"]
    for row in rows:
        if isinstance(row, RatioFailure):
            lines.append(f"{row.n:>4}  [failed: {row.error}]")
        else:
            lines.append(
                f"{row.n:>4}  {_format_real(row.numerator):>14}  "
                f"{_format_real(row.denominator):>14}  "
                f"{_format_real(row.ratio):>10}  {row.norm_kind}"
            )
    return "\n".join(lines)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
