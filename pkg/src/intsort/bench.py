"""Timing and auxiliary-memory measurement over the (algorithm, case, n) matrix."""
from __future__ import annotations

import gc
import logging
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Union

from .input_gen import DEFAULT_SEED, InputSpec, generate
from .memory import CountingAllocator
from .records import RecordArray
from .sorting_core import ALGORITHMS, get_algorithm
from .verify import is_sorted

log = logging.getLogger(__name__)

DESK_SIZES = (10**4, 10**5, 10**6)
PAPER_SIZES = (10**6, 10**7, 10**8)
BENCH_ALGORITHMS = ("bucket", "radix")

SortFn = Callable[..., RecordArray]


class MeasurementError(RuntimeError):
    pass


class BenchError(RuntimeError):
    def __init__(self, algorithm: Optional[str], case_id: int, n: int, cause: BaseException):
        where = f"case {case_id}, n={n}" + (f", {algorithm}" if algorithm else "")
        super().__init__(f"[{where}] {cause}")
        self.algorithm = algorithm
        self.case_id = case_id
        self.n = n
        self.cause = cause


@dataclass(frozen=True)
class BenchConfig:
    algorithms: Sequence[str] = BENCH_ALGORITHMS
    cases: Sequence[int] = (1, 2, 3, 4, 5, 6)
    sizes: Sequence[int] = DESK_SIZES
    repeats: int = 5
    base: int = 10
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.repeats < 3:
            raise ValueError(f"repeats must be >= 3, got {self.repeats}")
        if self.base < 2:
            raise ValueError(f"radix base must be >= 2, got {self.base}")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")
        bad_cases = [c for c in self.cases if c not in range(1, 7)]
        if bad_cases:
            raise ValueError(f"cases must be in 1..6, got {bad_cases}")
        if any(n < 0 for n in self.sizes):
            raise ValueError("sizes must be non-negative")


@dataclass(frozen=True)
class BenchResult:
    algorithm: str
    case_id: int
    n: int
    median_time: float
    relative_spread: float
    peak_bytes: int


def _resolve(algorithm: Union[str, SortFn]) -> SortFn:
    return get_algorithm(algorithm) if isinstance(algorithm, str) else algorithm


def time_sort(algorithm, seq: RecordArray, repeats: int = 5, *, M: Optional[int] = None,
              base: int = 10, verify: bool = True) -> tuple[float, float]:
    """Median wall time over ``repeats`` runs and the (max - min) / median spread.

    One untimed warm-up run comes first. Copying and the sortedness check
    happen outside the timed region.
    """
    if repeats < 3:
        raise ValueError(f"repeats must be >= 3, got {repeats}")
    sort = _resolve(algorithm)
    sort(seq.copy(), M=M, base=base)

    times = []
    gc_was_enabled = gc.isenabled()
    try:
        for _ in range(repeats):
            work = seq.copy()
            gc.disable()
            t0 = time.perf_counter()
            out = sort(work, M=M, base=base)
            elapsed = time.perf_counter() - t0
            if gc_was_enabled:
                gc.enable()
            if verify and not is_sorted(out):
                raise MeasurementError("sort produced unsorted output; measurement rejected")
            times.append(elapsed)
    finally:
        if gc_was_enabled:
            gc.enable()

    median = statistics.median(times)
    spread = (max(times) - min(times)) / median if median > 0 else 0.0
    return median, spread


def measure_peak_memory(algorithm, seq: RecordArray, *, M: Optional[int] = None, base: int = 10) -> int:
    """High-water mark of the sort's own allocations, in bytes."""
    alloc = CountingAllocator()
    _resolve(algorithm)(seq, M=M, base=base, alloc=alloc)
    return alloc.peak


def _ordered(config: BenchConfig):
    return sorted(set(config.cases)), sorted(set(config.sizes)), sorted(set(config.algorithms))


def iter_matrix(config: BenchConfig) -> Iterator[BenchResult]:
    cases, sizes, algorithms = _ordered(config)
    for case_id in cases:
        for n in sizes:
            if not algorithms:
                continue
            try:
                spec = InputSpec(case_id, n, seed=config.seed)
                seq = generate(spec)
            except Exception as exc:
                raise BenchError(None, case_id, n, exc) from exc
            for name in algorithms:
                try:
                    median, spread = time_sort(name, seq, config.repeats, M=spec.M, base=config.base)
                    peak = measure_peak_memory(name, seq, M=spec.M, base=config.base)
                except Exception as exc:
                    raise BenchError(name, case_id, n, exc) from exc
                log.info("case %d n=%d %s: %.6fs (spread %.3f), peak %d B",
                         case_id, n, name, median, spread, peak)
                yield BenchResult(name, case_id, n, median, spread, peak)


def run_matrix(config: BenchConfig) -> list[BenchResult]:
    """Run every (case, n, algorithm) cell; rows come back in that order."""
    return list(iter_matrix(config))
