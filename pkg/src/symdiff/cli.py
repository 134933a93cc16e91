"""Command-line front end.

    symdiff run <job-file> [--json] [--seed N] [--degree-bound D]
                [--threads N] [--plot-dir DIR]
    symdiff verify-paper [--p <prime>]

SYMDIFF_THREADS is used when --threads is not given.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import SymdiffError
from .jobs import parse_job, run_job


def _thread_default() -> int:
    env = os.environ.get("SYMDIFF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symdiff",
        description="exact membership engine for powers of polynomial ideals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a job file")
    run_p.add_argument("job_file")
    run_p.add_argument("--json", action="store_true", help="JSON-lines output")
    run_p.add_argument("--seed", type=int, default=0, help="seed for random corpora")
    run_p.add_argument("--degree-bound", type=int, default=None,
                       help="default bound for generators queries")
    run_p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default SYMDIFF_THREADS or 1)")
    run_p.add_argument("--plot-dir", default=None,
                       help="write a CSV and a PNG matrix per compare query")

    vp = sub.add_parser("verify-paper", help="run the curated example suite")
    vp.add_argument("--p", type=int, default=None, help="run at one prime only")
    return parser


def main(argv=None) -> int:
    args = build_argparser().parse_args(argv)
    try:
        if args.command == "run":
            with open(args.job_file, encoding="utf-8") as fh:
                text = fh.read()
            spec = parse_job(text)
            threads = args.threads if args.threads is not None else _thread_default()
            return run_job(
                spec,
                out_format="json" if args.json else "text",
                seed=args.seed,
                degree_bound=args.degree_bound,
                threads=threads,
                plot_dir=args.plot_dir,
            )
        if args.command == "verify-paper":
            from .verify import curated_checks

            results = curated_checks(args.p)
            ok = True
            for r in results:
                print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.details}")
                ok = ok and r.passed
            return 0 if ok else 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SymdiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
