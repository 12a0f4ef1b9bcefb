'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
import sys
import argparse

from loguru import logger

from Core.config import DEFAULT_SEED, EvalConfig
from Core.errors import EXIT_OK, EXIT_USAGE, MarcumPhiError, UsageError, exit_code_for
from Core.eval_bridge import FUNCTIONS, evaluate, parse_params
from Core.logging_utils import setup_logging
from Core.tables import parse_sweep, run_sweep, write_table
from Core.verify_pipeline import SUITES, verify_runner


def build_config(args) -> EvalConfig:
    """Preset (if any) first, then explicit flags on top."""
    cfg = EvalConfig.from_preset(args.preset) if args.preset else EvalConfig()
    return cfg.with_overrides(
        rel_tol=args.tol,
        max_terms=args.max_terms,
        seed=args.seed,
        mc_samples=args.samples,
    )


def cmd_eval(args) -> int:
    cfg = build_config(args)
    value = evaluate(args.function, parse_params(args.params), cfg)
    print(repr(value))
    return EXIT_OK


def cmd_table(args) -> int:
    cfg = build_config(args)
    sweep = parse_sweep(args.sweep)
    columns, rows = run_sweep(args.function, sweep, cfg, progress=args.progress)
    out = args.out or f"{args.function}.{args.format}"
    write_table(columns, rows, out, fmt=args.format, function=args.function)
    print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = build_config(args)
    report = verify_runner(
        args.suites, cfg,
        grid=args.grid,
        workers=args.workers,
        progress=args.progress,
    )
    out = report.save(args.out or "verify_report.json")
    summary = report.summary
    print(f"{summary['passed']}/{summary['total']} checks passed -> {out}")
    for record in report.failures():
        detail = record.failure or f"error {record.error!r} > {record.tolerance!r}"
        print(f"FAIL [{record.suite}] {record.name} {record.inputs}: {detail}")
    return report.exit_code()


def build_parser() -> argparse.ArgumentParser:
    # ---- SHARED OPTIONS ----
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="Series truncation relative tolerance (default: 1e-12)"
    )
    common.add_argument(
        "--max-terms",
        type=int,
        default=None,
        help="Cap on series terms / anti-diagonals (default: 10000)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Monte Carlo seed (default: {DEFAULT_SEED})"
    )
    common.add_argument(
        "--samples",
        type=int,
        default=None,
        help="Monte Carlo sample count (default: 1000000)"
    )
    common.add_argument(
        "--preset",
        type=str,
        default=None,
        help="Optional JSON EvalConfig preset; explicit flags override it"
    )
    common.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output path for table / verify"
    )

    # ---- LOGGING OPTIONS ----
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    common.add_argument("--quiet", action="store_true", help="Warnings only, no progress bars")
    common.add_argument("--no-log-file", action="store_true", help="Log to stderr only")

    parser = argparse.ArgumentParser(
        prog="marcumphi",
        description="Marcum-Q / Phi3 evaluation, tables and cross-validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    # ---- EVAL ----
    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate one function at one point")
    p_eval.add_argument("function", choices=list(FUNCTIONS))
    p_eval.add_argument("params", nargs="*", help="key=value parameters, e.g. m=1 a=1 b=0")
    p_eval.set_defaults(handler=cmd_eval)

    # ---- TABLE ----
    p_table = sub.add_parser("table", parents=[common], help="Evaluate a function over a parameter sweep")
    p_table.add_argument("function", choices=list(FUNCTIONS))
    p_table.add_argument(
        "sweep",
        nargs="+",
        help="name=start:stop:count, name=v1,v2,... or name=value; first name is the outer loop"
    )
    p_table.add_argument("--format", choices=["csv", "json"], default="csv")
    p_table.set_defaults(handler=cmd_table)

    # ---- VERIFY ----
    p_verify = sub.add_parser("verify", parents=[common], help="Run cross-validation suites")
    p_verify.add_argument("suites", nargs="*", metavar="suite",
                          help=f"Any of: {', '.join(SUITES)} (default: all)")
    p_verify.add_argument(
        "--grid",
        type=int,
        default=None,
        help="Points per axis for the marcum-cross and Rayleigh grids"
    )
    p_verify.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Threads for Monte Carlo chunks (results do not depend on it)"
    )
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if args.verbose else ("WARNING" if args.quiet else "INFO")
    setup_logging(level=level, log_file=not args.no_log_file)
    args.progress = not args.quiet and sys.stderr is not None and sys.stderr.isatty()

    try:
        return args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MarcumPhiError, IndexError) as e:
        logger.debug(f"{args.command} failed: {type(e).__name__}: {e}")
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
