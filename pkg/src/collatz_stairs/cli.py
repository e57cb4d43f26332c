"""Command-line driver.

Subcommands: gen (stair generation), verify (BVC check), index (stair
lookup for one value), coverage (bounded scan of the naturals), tree
(backward-tree export).  Output is machine readable, deterministic, and
byte-identical across worker counts.

Exit codes: 0 success / valid; 1 invalid BVC; 2 bad arguments;
3 step budget exceeded; 4 coverage scan left values unplaced.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import os
import sys

from . import backward, coverage, terms, verifier
from .core import DEFAULT_MAX_STEPS, BudgetExceeded, stair_index_icltz, stair_index_iu

BUDGET_ENV = "COLLATZ_STAIRS_BUDGET"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_UNPLACED = 4

RECORD_FIELDS = ("value", "k", "j", "q", "bvc", "status", "reason")


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_MAX_STEPS
    try:
        budget = int(raw)
        if budget < 1:
            raise ValueError
    except ValueError:
        raise SystemExit(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return budget


def _positive(name):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if value < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1")
        return value

    return parse


def _nat(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError("expected a decimal natural number")
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a value >= 1")
    return value


def _bits(text: str) -> str:
    if any(c not in "01" for c in text):
        raise argparse.ArgumentTypeError("BVC must consist of 0s and 1s only")
    return text


def term_record(term: terms.StairTerm) -> dict:
    return {
        "value": None if term.value is None else str(term.value),
        "k": term.expr.k,
        "j": term.expr.j,
        "q": term.expr.q,
        "bvc": term.bvc,
        "status": term.status,
        "reason": term.reason,
    }


def _emit_records(records, fmt: str, out) -> None:
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    else:
        writer = csv.DictWriter(out, fieldnames=RECORD_FIELDS, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({f: "" if rec[f] is None else rec[f] for f in RECORD_FIELDS})


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _gen_worker(args: tuple[int, int, int]) -> list[terms.StairTerm]:
    return terms.generate_stair_q(*args)


def cmd_gen(args) -> int:
    qs = [1] if args.j == 1 else list(range(1, args.j))
    tasks = [(args.k, args.j, q) for q in qs]
    if args.workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(min(args.workers, len(tasks))) as pool:
            slices = pool.map(_gen_worker, tasks)
    else:
        slices = [_gen_worker(t) for t in tasks]
    all_terms = [t for chunk in slices for t in chunk]
    records = (
        term_record(t) for t in all_terms if t.accepted or args.include_rejected
    )
    out, close = _open_out(args.out)
    try:
        _emit_records(records, args.format, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    result = verifier.verify_bvc(args.value, args.bvc)
    if result.accepted:
        print("valid")
        return EXIT_OK
    print(f"invalid: {result.describe()}")
    return EXIT_INVALID


def cmd_index(args) -> int:
    try:
        if args.invariant == "icltz":
            j = stair_index_icltz(args.n, args.budget)
            print("invariant" if j == 0 else j)
        else:
            idx = stair_index_iu(args.n, args.budget)
            if idx.in_invariant:
                print("invariant")
            else:
                print(f"j={idx.steps} k={idx.subtree}")
    except BudgetExceeded as exc:
        print(f"budget exceeded: no convergence within {exc.steps} steps", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_coverage(args) -> int:
    report = coverage.coverage_scan(
        args.max, budget=args.budget, workers=args.workers, chunk_size=args.chunk_size
    )
    doc = report.to_json()
    out, close = _open_out(args.out)
    try:
        out.write(doc)
    finally:
        if close:
            out.close()
    if args.fig:
        from . import viz

        viz.save_coverage_figure(report, args.fig)
    return EXIT_OK if not report.budget_exceeded else EXIT_UNPLACED


def cmd_tree(args) -> int:
    k = None if args.icltz else args.k
    text = backward.tree_dot(k, args.depth)
    out, close = _open_out(args.out)
    try:
        out.write(text)
    finally:
        if close:
            out.close()
    if args.fig:
        from . import viz

        viz.save_tree_figure(k, args.depth, args.fig)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatz-stairs",
        description="Generate, verify, and cross-check Collatz convergence stairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    budget = default_budget()
    cpus = os.cpu_count() or 1

    p = sub.add_parser("gen", help="generate the j-th stair of subtree k")
    p.add_argument("--k", type=_positive("k"), required=True, help="subtree index, >= 2")
    p.add_argument("--j", type=_positive("j"), required=True, help="stair index, >= 1")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--include-rejected", action="store_true",
                   help="also emit over-approximation candidates that failed")
    p.add_argument("--workers", type=_positive("workers"), default=cpus)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a value against its BVC")
    p.add_argument("--value", type=_nat, required=True)
    p.add_argument("--bvc", type=_bits, default="",
                   help="bit string, possibly empty")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("index", help="stair index of a value")
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--invariant", choices=("icltz", "iu"), default="iu")
    p.add_argument("--budget", type=_positive("budget"), default=budget)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("coverage", help="classify every value in 2..max")
    p.add_argument("--max", type=_positive("max"), required=True)
    p.add_argument("--budget", type=_positive("budget"), default=budget)
    p.add_argument("--workers", type=_positive("workers"), default=cpus)
    p.add_argument("--chunk-size", type=_positive("chunk-size"),
                   default=coverage.DEFAULT_CHUNK_SIZE)
    p.add_argument("--out", help="report file (default stdout)")
    p.add_argument("--fig", help="also render the occupancy histogram to this file")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("tree", help="export a backward tree")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", type=_positive("k"), help="subtree index, >= 2")
    target.add_argument("--icltz", action="store_true",
                        help="tree toward the {1,2,4} cycle")
    p.add_argument("--depth", type=_positive("depth"), required=True)
    p.add_argument("--out", help="DOT file (default stdout)")
    p.add_argument("--fig", help="also render the tree to this file")
    p.set_defaults(func=cmd_tree)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 2:
        parser.error("k must be >= 2")
    if args.command == "coverage" and args.max < 2:
        parser.error("max must be >= 2")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
