"""Bucket sort and LSD radix sort over integer keys, with a benchmark harness."""
from .input_gen import InputSpec, RngState, generate, read_sequence, rng_below, rng_next, write_sequence
from .records import Record, RecordArray
from .sorting_core import (
    RadixPlan,
    bucket_index,
    bucket_sort,
    build_radix_plan,
    counting_sort_by_digit,
    extract_digit,
    insertion_sort,
    radix_sort_lsd,
)
from .verify import is_permutation, is_sorted, is_stable, oracle_sort

__version__ = "0.1.0"
