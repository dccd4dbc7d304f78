"""Tables, CSV, log-log plot data and scaling fits for benchmark results."""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .bench import BenchResult

CSV_FIELDS = ("algorithm", "case", "n", "median_time_s", "relative_spread", "peak_bytes")
FIGURE_GROUPS = {1: (1, 2, 3), 2: (4, 5, 6)}
# Column-group order in the tables: radix first, as in the original tables.
ALGORITHM_ORDER = ("radix", "bucket", "insertion")
TABLE_TITLES = {"time": "Time consumption [s]", "memory": "Memory usage [MB]"}


@dataclass(frozen=True)
class ScalingFit:
    algorithm: Optional[str]
    case_id: Optional[int]
    slope: float
    r_squared: float
    intercept: float = 0.0


def fit_loglog_slope(points: Iterable[tuple[float, float]], *, algorithm: Optional[str] = None,
                     case_id: Optional[int] = None) -> ScalingFit:
    """Least-squares line through (log n, log t); the slope is the scaling exponent."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError(f"need at least 2 points, got {len(pts)}")
    if any(n <= 0 or t <= 0 for n, t in pts):
        raise ValueError("all sizes and times must be positive")
    x = np.log([float(n) for n, _ in pts])
    y = np.log([float(t) for _, t in pts])
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("need at least 2 distinct sizes")
    slope = float(dx @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    ss_res = float(resid @ resid)
    ss_tot = float((y - y.mean()) @ (y - y.mean()))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(algorithm, case_id, slope, max(0.0, min(1.0, r2)), intercept)


def scaling_fits(results: Sequence[BenchResult]) -> list[ScalingFit]:
    """One fit per (algorithm, case) that has at least two distinct positive sizes."""
    grouped: dict[tuple[str, int], list[tuple[int, float]]] = {}
    for r in results:
        if r.n > 0 and r.median_time > 0:
            grouped.setdefault((r.algorithm, r.case_id), []).append((r.n, r.median_time))
    fits = []
    for (alg, case_id), pts in sorted(grouped.items(), key=lambda kv: (kv[0][1], _alg_rank(kv[0][0]))):
        if len({n for n, _ in pts}) >= 2:
            fits.append(fit_loglog_slope(pts, algorithm=alg, case_id=case_id))
    return fits


def _alg_rank(name: str):
    return (ALGORITHM_ORDER.index(name), name) if name in ALGORITHM_ORDER else (len(ALGORITHM_ORDER), name)


def _size_label(n: int) -> str:
    if n >= 10:
        e = round(math.log10(n))
        if 10**e == n:
            return f"n=10^{e}"
    return f"n={n}"


def emit_table(results: Sequence[BenchResult], metric: str = "time") -> str:
    """Paper-style table: one row per input case, a column group per algorithm."""
    if metric not in TABLE_TITLES:
        raise ValueError(f"metric must be 'time' or 'memory', got {metric!r}")
    if not results:
        raise ValueError("no results to tabulate")

    algorithms = sorted({r.algorithm for r in results}, key=_alg_rank)
    sizes = sorted({r.n for r in results})
    cases = sorted({r.case_id for r in results})
    cells = {(r.algorithm, r.case_id, r.n): r for r in results}

    def fmt(r: Optional[BenchResult]) -> str:
        if r is None:
            return "-"
        if metric == "time":
            return f"{r.median_time:.2f}"
        return f"{r.peak_bytes / 1e6:.1f}"

    labels = [_size_label(n) for n in sizes]
    rows = [[fmt(cells.get((a, c, n))) for a in algorithms for n in sizes] for c in cases]
    width = max(len(s) for s in labels + [cell for row in rows for cell in row])
    group_width = len(sizes) * (width + 1) - 1
    first = max(len("Input no."), 3)

    lines = [TABLE_TITLES[metric]]
    lines.append(" " * first + " | " + " | ".join(a.center(group_width) for a in algorithms))
    header = [" ".join(lab.rjust(width) for lab in labels) for _ in algorithms]
    lines.append("Input no.".ljust(first) + " | " + " | ".join(header))
    lines.append("-" * first + "-+-" + "-+-".join("-" * group_width for _ in algorithms))
    for c, row in zip(cases, rows):
        groups = [
            " ".join(cell.rjust(width) for cell in row[i * len(sizes):(i + 1) * len(sizes)])
            for i in range(len(algorithms))
        ]
        lines.append(str(c).rjust(first) + " | " + " | ".join(groups))
    return "\n".join(lines) + "\n"


def _fmt_float(x: float) -> str:
    # Shortest round-tripping decimal without an exponent.
    return np.format_float_positional(float(x), trim="-")


def emit_csv(results: Sequence[BenchResult], destination) -> None:
    """Write results as CSV (LF line endings, plain decimals)."""
    def write(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in results:
            w.writerow([r.algorithm, r.case_id, r.n, _fmt_float(r.median_time),
                        _fmt_float(r.relative_spread), r.peak_bytes])

    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", newline="") as f:
            write(f)
    else:
        write(destination)


def read_csv(source) -> list[BenchResult]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as f:
            return read_csv(f)
    reader = csv.DictReader(source)
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}; expected {list(CSV_FIELDS)}")
    return [
        BenchResult(row["algorithm"], int(row["case"]), int(row["n"]), float(row["median_time_s"]),
                    float(row["relative_spread"]), int(row["peak_bytes"]))
        for row in reader
    ]


def plot_series(results: Sequence[BenchResult], group: int) -> dict[tuple[str, int], list[tuple[int, float]]]:
    """(algorithm, case) -> [(n, median_time), ...] for one figure group."""
    if group not in FIGURE_GROUPS:
        raise ValueError(f"figure group must be 1 or 2, got {group}")
    cases = FIGURE_GROUPS[group]
    series: dict[tuple[str, int], list[tuple[int, float]]] = {}
    for r in results:
        if r.case_id in cases:
            series.setdefault((r.algorithm, r.case_id), []).append((r.n, r.median_time))
    if not series:
        raise ValueError(f"no results for figure group {group} (cases {cases})")
    ordered = sorted(series, key=lambda k: (_alg_rank(k[0]), k[1]))
    return {k: sorted(series[k]) for k in ordered}


def emit_plot_data(results: Sequence[BenchResult], group: int, destination) -> tuple[Path, Path]:
    """Write gnuplot-style data blocks plus a log-log plot script next to them.

    Returns (data path, script path).
    """
    series = plot_series(results, group)
    data_path = Path(destination)
    script_path = data_path.with_suffix(".gp")
    cases = ", ".join(map(str, FIGURE_GROUPS[group]))

    buf = io.StringIO()
    buf.write(f"# time vs n, input cases {cases}\n")
    buf.write("# axes: log-log\n")
    for i, ((alg, case_id), pts) in enumerate(series.items()):
        if i:
            buf.write("\n\n")
        buf.write(f"# series {i}: {alg} case {case_id}\n")
        buf.write("# n median_time_s\n")
        for n, t in pts:
            buf.write(f"{n} {_fmt_float(t)}\n")
    data_path.write_text(buf.getvalue())

    plots = ", \\\n     ".join(
        f"'{data_path.name}' index {i} with linespoints title '{alg}, case {case_id}'"
        for i, (alg, case_id) in enumerate(series)
    )
    script_path.write_text(
        f"# gnuplot script: time consumption for input cases {cases}\n"
        "set logscale x 10\n"
        "set logscale y 10\n"
        "set xlabel 'n'\n"
        "set ylabel 'time [s]'\n"
        "set key left top\n"
        f"plot {plots}\n"
    )
    return data_path, script_path


def format_fits(fits: Sequence[ScalingFit]) -> str:
    lines = ["log-log scaling (time ~ n^slope)", "algorithm  case   slope     r^2"]
    for f in fits:
        lines.append(f"{f.algorithm:<10} {f.case_id:>4} {f.slope:>7.3f} {f.r_squared:>7.4f}")
    return "\n".join(lines) + "\n"
