import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from intsort.memory import CountingAllocator
from intsort.records import RecordArray
from intsort.sorting_core import (
    RadixPlan,
    _mul_div_wide,
    bucket_index,
    bucket_sort,
    build_radix_plan,
    counting_sort_by_digit,
    extract_digit,
    get_algorithm,
    insertion_sort,
    radix_sort_lsd,
)
from intsort.verify import is_stable, oracle_sort

SORTS = {
    "insertion": lambda s: insertion_sort(s),
    "bucket": lambda s: bucket_sort(s, max([0] + s.keys.tolist())),
    "radix10": lambda s: radix_sort_lsd(s, 10),
    "radix256": lambda s: radix_sort_lsd(s, 256),
    "radix2": lambda s: radix_sort_lsd(s, 2),
}

key_lists = st.lists(st.integers(0, 2**40), max_size=60)
dup_key_lists = st.lists(st.integers(0, 5), max_size=60)


def keys_of(seq):
    return seq.keys.tolist()


# --- insertion sort ---------------------------------------------------------

def test_insertion_sort_examples():
    assert len(insertion_sort(RecordArray.empty())) == 0
    assert keys_of(insertion_sort(RecordArray.from_keys([3, 1, 2]))) == [1, 2, 3]
    # a=0, b=1, c=2
    out = insertion_sort(RecordArray.from_pairs([(2, 0), (1, 1), (2, 2)]))
    assert out.to_pairs() == [(1, 1), (2, 0), (2, 2)]


def test_sorts_leave_input_untouched():
    seq = RecordArray.from_keys([5, 3, 9, 1, 3])
    before = seq.copy()
    for sort in SORTS.values():
        sort(seq)
        assert seq == before


# --- counting sort by digit -------------------------------------------------

def test_counting_sort_by_digit_examples():
    seq = RecordArray.from_keys([170, 45, 75])
    plan = RadixPlan(10, 3)
    assert keys_of(counting_sort_by_digit(seq, plan, 0)) == [170, 45, 75]
    assert keys_of(counting_sort_by_digit(seq, plan, 1)) == [45, 170, 75]
    assert keys_of(counting_sort_by_digit(seq, plan, 2)) == [45, 75, 170]


def test_counting_sort_by_digit_rejects_bad_index():
    plan = RadixPlan(10, 2)
    with pytest.raises(ValueError):
        counting_sort_by_digit(RecordArray.from_keys([1]), plan, 2)
    with pytest.raises(ValueError):
        counting_sort_by_digit(RecordArray.from_keys([1]), plan, -1)


@given(key_lists, st.integers(2, 300), st.integers(0, 5))
def test_counting_pass_sorts_by_digit_stably(keys, base, idx):
    seq = RecordArray.from_keys(keys)
    plan = build_radix_plan(seq, base)
    idx = min(idx, plan.digits - 1)
    out = counting_sort_by_digit(seq, plan, idx)
    # brute force: stable sort on the digit alone
    expected = sorted(seq.to_pairs(), key=lambda p: extract_digit(p[0], idx, base))
    assert out.to_pairs() == expected
    assert sorted(out.to_pairs()) == sorted(seq.to_pairs())


# --- bucket index -----------------------------------------------------------

def test_bucket_index_examples():
    assert bucket_index(0, 10, 999) == 0
    assert bucket_index(999, 10, 999) == 9
    assert bucket_index(500, 10, 999) == 5


def test_bucket_index_rejects_out_of_range():
    with pytest.raises(ValueError):
        bucket_index(1000, 10, 999)
    with pytest.raises(ValueError):
        bucket_index(1, 0, 999)


@given(st.integers(1, 2**32), st.integers(0, 2**40), st.data())
def test_bucket_index_monotone_and_in_range(n, M, data):
    k1 = data.draw(st.integers(0, M))
    k2 = data.draw(st.integers(k1, M))
    b1, b2 = bucket_index(k1, n, M), bucket_index(k2, n, M)
    assert 0 <= b1 <= b2 <= n - 1


@given(st.integers(1, 2**63 - 2), st.data())
def test_wide_mul_div_matches_python_ints(c, data):
    a = data.draw(st.integers(0, c - 1))
    b = data.draw(st.integers(0, 2**64 - 1))
    assert int(_mul_div_wide(np.uint64(a), np.uint64(b), np.uint64(c))) == (a * b) // c


def test_bucket_sort_wide_product_path():
    # n * M exceeds 64 bits, forcing the 128-bit bucket index route
    M = 2**62
    rng = random.Random(5)
    keys = [rng.randrange(M + 1) for _ in range(50)] + [M, 0, M]
    seq = RecordArray.from_keys(keys)
    assert len(seq) * M > 2**64
    assert bucket_sort(seq, M) == oracle_sort(seq)


# --- bucket sort ------------------------------------------------------------

def test_bucket_sort_examples():
    assert len(bucket_sort(RecordArray.empty(), 10)) == 0
    seq = RecordArray.from_keys([1, 1, 4, 7, 7, 9])
    assert bucket_sort(seq, 9) == seq


def test_bucket_sort_rejects_key_above_range():
    with pytest.raises(ValueError, match="outside"):
        bucket_sort(RecordArray.from_keys([3, 11]), 10)


def test_bucket_sort_matches_oracle_on_random_seeds():
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randrange(0, 200)
        M = rng.choice([0, 1, 7, 100, 10**6, 2**40])
        seq = RecordArray.from_keys([rng.randint(0, M) for _ in range(n)])
        assert bucket_sort(seq, M) == oracle_sort(seq), seed


# --- radix ------------------------------------------------------------------

def test_build_radix_plan_examples():
    assert build_radix_plan(RecordArray.from_keys([0]), 10).digits == 1
    assert build_radix_plan(RecordArray.from_keys([999999]), 10).digits == 6
    assert build_radix_plan(RecordArray.from_keys([10**8]), 10).digits == len(str(10**8))
    assert build_radix_plan(RecordArray.empty(), 10).digits == 1
    with pytest.raises(ValueError):
        build_radix_plan(RecordArray.from_keys([1]), 1)


@given(key_lists, st.integers(2, 1000))
def test_radix_plan_digits_minimal(keys, base):
    plan = build_radix_plan(RecordArray.from_keys(keys), base)
    m = max(keys, default=0)
    assert base**plan.digits > m
    if m > 0:
        assert base ** (plan.digits - 1) <= m
    else:
        assert plan.digits == 1


def test_extract_digit_examples():
    assert extract_digit(170, 0, 10) == 0
    assert extract_digit(170, 1, 10) == 7
    assert extract_digit(170, 2, 10) == 1


@given(st.integers(0, 2**40), st.integers(2, 2**20))
def test_digit_recomposition(key, base):
    digits = build_radix_plan(RecordArray.from_keys([key]), base).digits
    assert sum(extract_digit(key, i, base) * base**i for i in range(digits)) == key


def test_radix_sort_examples():
    assert len(radix_sort_lsd(RecordArray.empty())) == 0
    seq = RecordArray.from_keys([170, 45, 75, 90, 802, 24, 2, 66])
    assert keys_of(radix_sort_lsd(seq, 10)) == sorted(keys_of(seq))
    assert radix_sort_lsd(seq, 10) == radix_sort_lsd(seq, 256)


@given(key_lists, st.integers(2, 70000))
def test_radix_base_invariance(keys, base):
    seq = RecordArray.from_keys(keys)
    assert radix_sort_lsd(seq, base) == radix_sort_lsd(seq, 10)


# --- shared properties ------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SORTS))
@given(keys=st.one_of(key_lists, dup_key_lists))
def test_sort_equals_oracle(name, keys):
    seq = RecordArray.from_keys(keys)
    out = SORTS[name](seq)
    assert out == oracle_sort(seq)
    assert is_stable(seq, out)


@pytest.mark.parametrize("name", sorted(SORTS))
@given(pairs=st.lists(st.tuples(st.integers(0, 4), st.integers(0, 2**64 - 1)), max_size=40))
def test_stable_with_arbitrary_tags(name, pairs):
    seq = RecordArray.from_pairs(pairs)
    out = SORTS[name](seq)
    assert out == oracle_sort(seq)


@pytest.mark.parametrize("name", sorted(SORTS))
@given(keys=dup_key_lists)
def test_idempotent(name, keys):
    once = SORTS[name](RecordArray.from_keys(keys))
    assert SORTS[name](once) == once


def test_get_algorithm():
    assert get_algorithm("radix")(RecordArray.from_keys([2, 1]), base=16).keys.tolist() == [1, 2]
    with pytest.raises(ValueError):
        get_algorithm("quick")


# --- auxiliary memory -------------------------------------------------------

def test_radix_aux_memory_is_two_buffers_and_counter():
    seq = RecordArray.from_keys(range(1000, 0, -1))
    alloc = CountingAllocator()
    radix_sort_lsd(seq, 10, alloc=alloc)
    assert alloc.peak == 2 * 16 * 1000 + 8 * 10
    assert alloc.current == 16 * 1000


def test_bucket_aux_memory_linear_in_n():
    alloc = CountingAllocator()
    bucket_sort(RecordArray.from_keys(range(500)), 10**6, alloc=alloc)
    # output (key + tag), list heads, and (key, tag, next) nodes
    assert alloc.peak == 500 * (16 + 8 + 24)


def test_radix_plan_from_declared_range():
    seq = RecordArray.from_keys([5, 999_999])
    assert build_radix_plan(seq, 10).digits == 6
    assert build_radix_plan(seq, 10, M=10**6).digits == 7
    assert build_radix_plan(RecordArray.from_keys([3]), 10, M=10**8).digits == 9
    assert build_radix_plan(RecordArray.from_keys([3]), 10, M=10**4).digits == 5
    with pytest.raises(ValueError):
        build_radix_plan(seq, 10, M=10)


@given(key_lists, st.integers(2, 300))
def test_extra_passes_from_range_bound_change_nothing(keys, base):
    seq = RecordArray.from_keys(keys)
    assert radix_sort_lsd(seq, base, M=2**41) == radix_sort_lsd(seq, base)
