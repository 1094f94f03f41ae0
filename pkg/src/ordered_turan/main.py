#!/usr/bin/env python3
"""ordered-turan command line.

Reports go to stdout as JSON; logs and errors go to stderr. Exit codes: 0 success,
2 precondition violation, 3 certification failure, 4 suite violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from ordered_turan import __version__
from ordered_turan.bounds.simplex import choose_depth
from ordered_turan.config.settings import get_settings
from ordered_turan.construction.certify import CERTIFY_MODES
from ordered_turan.construction.recursive import ConstructionParams
from ordered_turan.core.io import parse_rational
from ordered_turan.errors import OrderedTuranError, PreconditionError, SuiteViolation
from ordered_turan.harness.commands import (
    CHECK_SUITES,
    cmd_blowup_audit,
    cmd_build,
    cmd_certify,
    cmd_check,
    cmd_converge,
    cmd_depth,
    cmd_embed,
    cmd_lower_bound,
    cmd_params,
    cmd_solve_exact,
)
from ordered_turan.harness.report import ExperimentReport
from ordered_turan.log import configure_logging, level_for
from ordered_turan.solvers.rho import list_methods


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordered-turan", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("-q", "--quiet", action="store_true", help="only errors on stderr")
    parser.add_argument("--json-out", type=Path, help="also write the report JSON here")
    parser.add_argument("--csv-out", type=Path, help="also write the report rows as CSV here")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build G_eps(n, d) with a certificate sidecar")
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--d", type=int, help="depth; defaults to the least d meeting the depth condition")
    build.add_argument("--eps", type=parse_rational, default=parse_rational("1"))
    build.add_argument("--k", type=int, default=2)
    build.add_argument("--seed", type=int, default=0)
    build.add_argument("--out", type=Path)
    build.add_argument("--mode", choices=CERTIFY_MODES, default="auto")
    build.add_argument("--allow-uncertified", action="store_true",
                       help="keep the least-discrepant block when certification retries run out")

    certify = sub.add_parser("certify", help="certify one quasirandom block")
    certify.add_argument("--d", type=int, required=True)
    certify.add_argument("--eps", type=parse_rational, default=parse_rational("1"))
    certify.add_argument("--k", type=int, default=2)
    source = certify.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path, help="block file to certify")
    source.add_argument("--n", type=int, help="sample a fresh block of this size")
    certify.add_argument("--seed", type=int, default=0)
    certify.add_argument("--mode", choices=CERTIFY_MODES, default="auto")

    converge = sub.add_parser("converge", help="exact and sampled P_k-free ratios over a grid")
    converge.add_argument("--k", type=int, default=2)
    converge.add_argument("--eps", type=parse_rational, default=parse_rational("1"))
    converge.add_argument("--d", type=int, nargs="+", default=[1, 2, 3, 4])
    converge.add_argument("--m", type=int, nargs="+", default=[1], help="n = m * 2^d")
    converge.add_argument("--seed", type=int, default=0)
    converge.add_argument("--trials", type=int, default=1000)
    converge.add_argument("--budget", type=int, help="node budget once k^n exceeds the full cap")
    converge.add_argument("--mode", choices=CERTIFY_MODES, default="auto")
    converge.add_argument("--jobs", type=int, help="parallel instances (ORDERED_TURAN_JOBS)")

    lower = sub.add_parser("lower-bound", help="best of sampled random levelings")
    lower.add_argument("--graph", type=Path, required=True)
    levels = lower.add_mutually_exclusive_group(required=True)
    levels.add_argument("--levels", type=int)
    levels.add_argument("--pattern", help="use L = longest ascending path of this pattern")
    lower.add_argument("--trials", type=int, default=1000)
    lower.add_argument("--seed", type=int, default=0)

    solve = sub.add_parser("solve-exact", help="largest F-free subgraph")
    solve.add_argument("--graph", type=Path, required=True)
    target = solve.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", type=int, help="F = P_k")
    target.add_argument("--pattern")
    solve.add_argument("--method", choices=list_methods(), default="auto")
    solve.add_argument("--budget", type=int)
    solve.add_argument("--trials", type=int, default=1000)
    solve.add_argument("--seed", type=int, default=0)

    check = sub.add_parser("check", help="exact inequality suites")
    check.add_argument("--suite", action="append", choices=CHECK_SUITES, dest="suites")
    check.add_argument("--depth-table", action="store_true", help="run only the depth suite")
    check.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5])
    check.add_argument("--d", type=int, nargs="+", default=list(range(1, 9)))
    check.add_argument("--eps", type=parse_rational, default=parse_rational("1"))
    check.add_argument("--triples", type=int, default=10_000)
    check.add_argument("--partition-samples", type=int, default=1000)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    depth = sub.add_parser("depth", help="depth condition table")
    depth.add_argument("--eps", type=parse_rational, required=True)
    depth.add_argument("--k", type=int, default=2)
    depth.add_argument("--extra", type=int, default=2)

    audit = sub.add_parser("blowup-audit", help="brute-force transversal counts on a blow-up")
    audit.add_argument("--base", default="K2", help="graph file or shorthand")
    audit.add_argument("--pattern", default="K2", help="graph file or shorthand")
    audit.add_argument("--t", type=int, default=2)
    audit.add_argument("--eps", type=parse_rational, default=parse_rational("1/10"))
    audit.add_argument("--subgraphs", type=int, default=20)
    audit.add_argument("--cases", type=int, default=100)
    audit.add_argument("--seed", type=int, default=0)

    embed = sub.add_parser("embed", help="find an order-preserving copy of a pattern")
    embed.add_argument("--graph", type=Path, required=True)
    embed.add_argument("--pattern", required=True)
    embed.add_argument("--count", action="store_true")

    params = sub.add_parser("params", help="π, ordered π and the leveling lower bound for a pattern")
    params.add_argument("--pattern", required=True, help="graph file or shorthand")

    return parser


def _dispatch(args: argparse.Namespace) -> ExperimentReport:
    settings = get_settings()
    command = args.command
    if command == "build":
        d = args.d if args.d is not None else choose_depth(args.eps, args.k)
        params = ConstructionParams(eps=args.eps, d=d, k=args.k, n=args.n, seed=args.seed)
        out = args.out or Path(f"g_{args.n}_{d}.ordgraph")
        return cmd_build(params, out, strict=not args.allow_uncertified, mode=args.mode,
                         settings=settings)
    if command == "certify":
        return cmd_certify(d=args.d, eps=args.eps, k=args.k, graph_path=args.graph, n=args.n,
                           seed=args.seed, mode=args.mode, settings=settings)
    if command == "converge":
        return cmd_converge(k=args.k, eps=args.eps, ds=args.d, ms=args.m, seed=args.seed,
                            trials=args.trials, budget=args.budget, mode=args.mode,
                            jobs=args.jobs, settings=settings)
    if command == "lower-bound":
        return cmd_lower_bound(args.graph, levels=args.levels, pattern=args.pattern,
                               trials=args.trials, seed=args.seed)
    if command == "solve-exact":
        pattern = args.pattern if args.pattern is not None else f"P{args.k}"
        return cmd_solve_exact(args.graph, pattern, method=args.method, budget=args.budget,
                               trials=args.trials, seed=args.seed, settings=settings)
    if command == "check":
        suites = ["depth"] if args.depth_table else (args.suites or list(CHECK_SUITES))
        return cmd_check(suites=suites, ks=args.k, ds=args.d, eps=args.eps, triples=args.triples,
                         partition_samples=args.partition_samples, seed=args.seed,
                         inject_fault=args.inject_fault, settings=settings)
    if command == "depth":
        return cmd_depth(args.eps, args.k, args.extra)
    if command == "blowup-audit":
        return cmd_blowup_audit(args.base, args.pattern, t=args.t, eps=args.eps,
                                subgraphs=args.subgraphs, cases=args.cases, seed=args.seed,
                                settings=settings)
    if command == "embed":
        return cmd_embed(args.graph, args.pattern, count=args.count)
    if command == "params":
        return cmd_params(args.pattern, settings)
    raise PreconditionError(f"unknown command {command!r}")


def _write_outputs(report: ExperimentReport, args: argparse.Namespace) -> None:
    if args.json_out:
        report.write_json(args.json_out)
    if args.csv_out:
        report.write_csv(args.csv_out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = _build_parser().parse_args(argv)
    configure_logging(level_for(args.verbose, args.quiet))
    try:
        report = _dispatch(args)
        _write_outputs(report, args)
    except SuiteViolation as exc:
        # outputs carry every witness; stderr only the first
        if exc.report is not None:
            _write_outputs(exc.report, args)
        print(json.dumps(exc.to_dict(), sort_keys=True, default=str), file=sys.stderr)
        return exc.exit_code
    except OrderedTuranError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True, default=str), file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(report.to_json())
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
