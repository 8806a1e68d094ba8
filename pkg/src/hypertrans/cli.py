"""Command-line entry point.

Thin client over the service layer: subcommands ratsol, isomono,
criterion, construct, decompose (plus serve, which starts the HTTP
front end).  Exit codes: 0 completed (any verdict), 1 usage or parse
error, 2 inconclusive (a solver failure).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from . import service
from .errors import HypertransError, ParseError
from .ratsol import DEFAULT_MAX_DEGREE


def _add_common(p: argparse.ArgumentParser, with_assumptions: bool = False):
    p.add_argument("--op", help="scalar operator, e.g. \"D^2 + (1/x)*D\"")
    p.add_argument("--rhs", help="right-hand side expression")
    p.add_argument("--matrix", action="append", default=[],
                   metavar="FILE", help="system matrix JSON file "
                   '({"rows": R, "cols": C, "entries": [[expr, ...], ...]}); '
                   "may be repeated where several operands make sense")
    if with_assumptions:
        p.add_argument("--assume-irreducible", action="store_true",
                       help="record the irreducibility hypothesis")
        p.add_argument("--assume-quasi-simple", action="store_true",
                       help="record the quasi-simple Galois group hypothesis")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                   help=f"cap on certified bounds (default {DEFAULT_MAX_DEGREE})")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the cyclic-vector search (default 0)")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help="emit the full JSON report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hypertrans",
        description="exact rational-solution and hypertranscendence "
                    "decisions for parameterized linear ODEs over Q(t)(x)")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("ratsol", help="rational solutions of "
                               "L(y) = rhs or of a first-order system"))
    _add_common(sub.add_parser("isomono", help="integrability "
                               "(isomonodromy) test for dY = A Y"))
    _add_common(sub.add_parser("criterion", help="two-test "
                               "hypertranscendence criterion for L(y) = b"),
                with_assumptions=True)
    pc = sub.add_parser("construct", help="module constructions")
    pc.add_argument("kind", choices=service.CONSTRUCT_KINDS)
    _add_common(pc)
    _add_common(sub.add_parser("decompose", help="constant / purely "
                               "non-constant block classification"))
    ps = sub.add_parser("serve", help="start the HTTP front end")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8000)
    return ap


def _summary_lines(report: dict) -> List[str]:
    lines = [f"verdict: {report['verdict']}"]
    if report.get("group"):
        lines.append(f"group: {report['group']}")
    integ = report.get("integrability")
    if integ is not None:
        lines.append(f"integrability solvable: {integ['solvable']}")
    inhom = report.get("inhomogeneous")
    if inhom is not None:
        lines.append(f"inhomogeneous solvable: {inhom['solvable']}")
    diag = report.get("diagnostics") or {}
    for key in ("dimension", "basis", "particular", "constant_indices",
                "non_constant_indices", "error"):
        if key in diag and diag[key] is not None:
            lines.append(f"{key}: {diag[key]}")
    for c in report.get("caveats", []):
        lines.append(f"caveat: {c}")
    return lines


def _dispatch(args) -> int:
    matrices = [service.load_matrix_file(p) for p in args.matrix]
    single = matrices[0] if matrices else None
    if args.command == "ratsol":
        report, code = service.run_ratsol(
            op_text=args.op, rhs_text=args.rhs, matrix=single,
            seed=args.seed, max_degree=args.max_degree)
    elif args.command == "isomono":
        report, code = service.run_isomono(
            op_text=args.op, matrix=single, seed=args.seed,
            max_degree=args.max_degree)
    elif args.command == "criterion":
        report, code = service.run_criterion(
            args.op, args.rhs,
            assume_irreducible=args.assume_irreducible,
            assume_quasi_simple=args.assume_quasi_simple,
            seed=args.seed, max_degree=args.max_degree)
    elif args.command == "construct":
        report, code = service.run_construct(
            args.kind, op_text=args.op, rhs_text=args.rhs,
            matrices=matrices)
    elif args.command == "decompose":
        report, code = service.run_decompose(
            op_text=args.op, matrices=matrices, seed=args.seed,
            max_degree=args.max_degree)
    else:  # pragma: no cover - argparse enforces the choices
        raise service.UsageError(f"unknown command {args.command!r}")
    if args.as_json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_summary_lines(report)))
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .api import app
        uvicorn.run(app, host=args.host, port=args.port)
        return service.EXIT_OK
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return service.EXIT_USAGE
    except (service.UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return service.EXIT_USAGE
    except HypertransError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return service.EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
