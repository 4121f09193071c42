"""Command-line front door.

    ancientflow run --config <file> [--out <dir>] [--resolution N] [--parallel]
    ancientflow list [filter]
    ancientflow compare <a> <b> [--tol <rel>]

Exit codes: 0 success, 1 assertion failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import DomainError, FlowError
from .scenarios import (catalog_table, compare_summaries, parse_config,
                        run_scenario, shipped_scenarios)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _load_config(path: str, out: str | None, resolution: int | None):
    if path in shipped_scenarios() and not os.path.exists(path):
        cfg = shipped_scenarios()[path][0]
    else:
        with open(path) as fh:
            cfg = parse_config(fh.read())
    if out:
        cfg.output_dir = out
    if resolution:
        cfg.resolution = resolution
    return cfg


def _run_one(args_tuple):
    path, out, resolution = args_tuple
    cfg = _load_config(path, out, resolution)
    summary, passed = run_scenario(cfg)
    return cfg.name, summary, passed


def cmd_run(args) -> int:
    jobs = [(p, args.out, args.resolution) for p in args.config]
    try:
        if args.parallel and len(jobs) > 1:
            with ProcessPoolExecutor() as pool:
                results = list(pool.map(_run_one, jobs))
        else:
            results = [_run_one(j) for j in jobs]
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FlowError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    status = EXIT_OK
    for name, summary, passed in results:
        for row in summary["assertions"]:
            mark = "pass" if row["passed"] else "FAIL"
            print(f"[{name}] {mark} {row['name']}: value={row['value']} "
                  f"{row['comparator']} {row['bound']}")
        if not passed:
            status = EXIT_ASSERTION
    return status


def cmd_list(args) -> int:
    rows = catalog_table(args.filter or "")
    if rows:
        width = max(len(r[0]) for r in rows)
        for name, kind, statement in rows:
            print(f"{name:<{width}}  {kind:<15} {statement}")
    return EXIT_OK


def cmd_compare(args) -> int:
    for path in (args.a, args.b):
        if not os.path.exists(path):
            print(f"missing summary: {path}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        lines, ok = compare_summaries(args.a, args.b, args.tol)
    except (ValueError, KeyError) as exc:
        print(f"malformed summary: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_ASSERTION


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ancientflow",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run one or more scenarios")
    p_run.add_argument("--config", action="append", required=True,
                       help="config file path or shipped scenario name")
    p_run.add_argument("--out", default=None, help="output directory root")
    p_run.add_argument("--resolution", type=int, default=None)
    p_run.add_argument("--parallel", action="store_true",
                       help="run multiple scenarios concurrently")
    p_run.set_defaults(func=cmd_run)

    p_list = sub.add_parser("list", help="list shipped scenarios")
    p_list.add_argument("filter", nargs="?", default="")
    p_list.set_defaults(func=cmd_list)

    p_cmp = sub.add_parser("compare", help="diff two summary.json files")
    p_cmp.add_argument("a")
    p_cmp.add_argument("b")
    p_cmp.add_argument("--tol", type=float, default=1e-3)
    p_cmp.set_defaults(func=cmd_compare)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
