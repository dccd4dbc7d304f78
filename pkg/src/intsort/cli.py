"""Command-line entry point: generate, sort, verify, bench, report.

Exit codes: 0 success, 1 contract or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from . import bench, input_gen, report
from .sorting_core import ALGORITHMS, get_algorithm
from .verify import first_violation, is_sorted

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "INTSORT_SEED"

log = logging.getLogger("intsort")


def _int(text: str) -> int:
    # Accepts 1000000, 1e6, 10**6 and 0x-prefixed values.
    text = text.strip()
    try:
        if "**" in text:
            b, e = text.split("**")
            return int(b) ** int(e)
        if "e" in text.lower() and not text.lower().startswith("0x"):
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_int(part) for part in text.split(",") if part.strip()]


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return input_gen.DEFAULT_SEED
    try:
        return _int(raw)
    except argparse.ArgumentTypeError:
        raise SystemExit(f"intsort: {SEED_ENV}={raw!r} is not an integer")


def _fail(message: str) -> int:
    print(f"intsort: {message}", file=sys.stderr)
    return EXIT_FAIL


def cmd_generate(args) -> int:
    try:
        spec = input_gen.InputSpec(args.case, args.n, M=args.M, seed=args.seed,
                                   repeated_value=args.repeated_value,
                                   sorted_fraction=args.sorted_fraction)
        input_gen.write_spec(spec, args.out)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    print(f"case={spec.case_id} n={spec.n} M={spec.M} seed={spec.seed} -> {args.out}")
    return EXIT_OK


def cmd_sort(args) -> int:
    try:
        loaded = input_gen.load_sequence(args.input)
    except (ValueError, OSError) as exc:
        return _fail(f"cannot read {args.input}: {exc}")
    sort = get_algorithm(args.algorithm)
    h = loaded.header
    t0 = time.perf_counter()
    try:
        out = sort(loaded.records, M=h.M, base=args.base)
    except ValueError as exc:
        return _fail(str(exc))
    elapsed = time.perf_counter() - t0
    try:
        input_gen.write_sequence(out, args.out, case_id=h.case_id, M=h.M, seed=h.seed)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}")
    print(f"{elapsed:.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        original = input_gen.read_sequence(args.original)
        result = input_gen.read_sequence(args.sorted)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    problem = first_violation(original, result)
    if problem:
        print(f"FAIL: {problem}")
        return EXIT_FAIL
    print(f"sorted: yes\npermutation: yes (n={len(result)})")
    print("stability: not checkable from files (tags are positional)")
    return EXIT_OK


def _print_fits(results) -> None:
    sizes = {r.n for r in results if r.n > 0}
    if len(sizes) < 2:
        print("slope analysis omitted: fewer than 2 distinct sizes")
        return
    print(report.format_fits(report.scaling_fits(results)))


def _render(results, *, table: bool, plots: str | None) -> int:
    if table:
        print(report.emit_table(results, "time"))
        print(report.emit_table(results, "memory"))
    if plots:
        out_dir = Path(plots)
        out_dir.mkdir(parents=True, exist_ok=True)
        for group in report.FIGURE_GROUPS:
            try:
                data, script = report.emit_plot_data(results, group, out_dir / f"figure{group}.dat")
            except ValueError as exc:
                print(f"plot group {group} skipped: {exc}", file=sys.stderr)
                continue
            print(f"wrote {data} and {script}")
    _print_fits(results)
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = bench.PAPER_SIZES if args.paper_scale else (args.sizes or bench.DESK_SIZES)
    try:
        config = bench.BenchConfig(algorithms=tuple(args.algorithms), cases=tuple(args.cases),
                                   sizes=tuple(sizes), repeats=args.repeats, base=args.base,
                                   seed=args.seed)
    except ValueError as exc:
        print(f"intsort bench: {exc}", file=sys.stderr)
        return EXIT_USAGE

    results = []
    status = EXIT_OK
    try:
        for r in bench.iter_matrix(config):
            results.append(r)
            print(f"case {r.case_id} n={r.n} {r.algorithm}: {r.median_time:.6f}s "
                  f"(spread {r.relative_spread:.3f}), peak {r.peak_bytes} B", file=sys.stderr)
    except bench.BenchError as exc:
        status = _fail(str(exc))
    finally:
        report.emit_csv(results, args.csv)
    if results:
        _render(results, table=args.table, plots=args.plots)
    return status


def cmd_report(args) -> int:
    try:
        results = report.read_csv(args.csv)
    except (ValueError, OSError, KeyError) as exc:
        return _fail(f"cannot read {args.csv}: {exc}")
    if not results:
        return _fail(f"{args.csv} has no result rows")
    return _render(results, table=not args.no_table, plots=args.plots)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intsort", description="Integer sorting benchmark harness.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    p = sub.add_parser("generate", help="write one of the six input cases to a sequence file")
    p.add_argument("--case", type=int, required=True, choices=range(1, 7))
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--M", type=_int, default=None, help="range bound (default per case)")
    p.add_argument("--seed", type=_int, default=seed)
    p.add_argument("--repeated-value", type=_int, default=None, help="case 6 repeated key (default M/2)")
    p.add_argument("--sorted-fraction", type=float, default=0.95, help="case 3 sorted share")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sort", help="sort a sequence file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--algorithm", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--base", type=_int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("verify", help="check a sorted file against its original")
    p.add_argument("original")
    p.add_argument("sorted")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run the benchmark matrix")
    p.add_argument("--algorithms", type=lambda s: [a.strip() for a in s.split(",") if a.strip()],
                   default=list(bench.BENCH_ALGORITHMS))
    p.add_argument("--cases", type=_int_list, default=[1, 2, 3, 4, 5, 6])
    p.add_argument("--sizes", type=_int_list, default=None)
    p.add_argument("--paper-scale", action="store_true", help="use n = 10^6, 10^7, 10^8")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--base", type=_int, default=10)
    p.add_argument("--seed", type=_int, default=seed)
    p.add_argument("--csv", required=True)
    p.add_argument("--table", action="store_true", help="print time and memory tables")
    p.add_argument("--plots", metavar="DIR", help="write log-log plot data for both figure groups")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="re-render tables and plot data from a bench CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--no-table", action="store_true")
    p.add_argument("--plots", metavar="DIR")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


def run() -> None:
    sys.exit(main())
