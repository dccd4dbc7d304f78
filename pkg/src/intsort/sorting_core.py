"""Insertion, counting, bucket and LSD radix sort over record sequences.

All public sorts are out-of-place: the input is left untouched and a new
``RecordArray`` is returned. Buffers are requested from an ``Allocator`` so
the benchmark can account for auxiliary memory. The hot loops are numba
kernels working on the raw ``uint64`` key/tag columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .memory import DEFAULT_ALLOCATOR, Allocator
from .records import KEY_DTYPE, TAG_DTYPE, RecordArray, as_records

UINT64_MAX = 2**64 - 1
# Keeps the remainder of the wide long division below 2**64 after a shift.
MAX_RANGE_BOUND = 2**63 - 2

__all__ = [
    "RadixPlan",
    "bucket_index",
    "bucket_sort",
    "build_radix_plan",
    "counting_sort_by_digit",
    "extract_digit",
    "insertion_sort",
    "radix_sort_lsd",
    "ALGORITHMS",
    "get_algorithm",
]


@dataclass(frozen=True)
class RadixPlan:
    base: int
    digits: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"radix base must be >= 2, got {self.base}")
        if self.digits < 1:
            raise ValueError(f"digit count must be >= 1, got {self.digits}")


# --------------------------------------------------------------------------
# kernels

@njit(cache=True)
def _insertion_sort_range(keys, tags, lo, hi):
    # Sorts keys[lo:hi] in place, carrying tags along.
    for j in range(lo + 1, hi):
        key = keys[j]
        tag = tags[j]
        i = j - 1
        while i >= lo and keys[i] > key:
            keys[i + 1] = keys[i]
            tags[i + 1] = tags[i]
            i -= 1
        keys[i + 1] = key
        tags[i + 1] = tag


@njit(cache=True)
def _counting_pass(src_keys, src_tags, dst_keys, dst_tags, count, divisor, base):
    n = src_keys.shape[0]
    for i in range(count.shape[0]):
        count[i] = 0
    for j in range(n):
        count[(src_keys[j] // divisor) % base] += 1
    for i in range(1, count.shape[0]):
        count[i] += count[i - 1]
    # Back to front: equal digits land right-to-left, which keeps the pass stable.
    for j in range(n - 1, -1, -1):
        d = (src_keys[j] // divisor) % base
        count[d] -= 1
        pos = count[d]
        dst_keys[pos] = src_keys[j]
        dst_tags[pos] = src_tags[j]


@njit(cache=True)
def _mul_div_wide(a, b, c):
    # floor(a * b / c) with a 128-bit intermediate; needs c < 2**63 and a quotient < 2**64.
    mask = np.uint64(0xFFFFFFFF)
    s32 = np.uint64(32)
    a0 = a & mask
    a1 = a >> s32
    b0 = b & mask
    b1 = b >> s32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    p11 = a1 * b1
    mid = (p00 >> s32) + (p01 & mask) + (p10 & mask)
    lo = (p00 & mask) | (mid << s32)
    hi = p11 + (p01 >> s32) + (p10 >> s32) + (mid >> s32)
    one = np.uint64(1)
    rem = np.uint64(0)
    q = np.uint64(0)
    for bit in range(127, -1, -1):
        if bit >= 64:
            cur = (hi >> np.uint64(bit - 64)) & one
        else:
            cur = (lo >> np.uint64(bit)) & one
        rem = (rem << one) | cur
        if rem >= c:
            rem -= c
            if bit < 64:
                q |= one << np.uint64(bit)
    return q


@njit(cache=True)
def _bucket_index_kernel(key, n, divisor, wide):
    if wide:
        return np.int64(_mul_div_wide(key, n, divisor))
    return np.int64((key * n) // divisor)


@njit(cache=True)
def _bucket_sort_kernel(keys, tags, out_keys, out_tags, head, nodes, divisor, wide):
    # nodes[3i:3i+3] = (key, tag, next) for record i; UINT64_MAX ends a list.
    n = keys.shape[0]
    nn = np.uint64(n)
    end = np.uint64(UINT64_MAX)
    for b in range(n):
        head[b] = end
    # Prepending while walking backwards leaves every list in arrival order.
    for i in range(n - 1, -1, -1):
        b = _bucket_index_kernel(keys[i], nn, divisor, wide)
        nodes[3 * i] = keys[i]
        nodes[3 * i + 1] = tags[i]
        nodes[3 * i + 2] = head[b]
        head[b] = np.uint64(i)
    # Concatenate the lists in bucket order, sorting each one in its output slot.
    pos = 0
    for b in range(n):
        start = pos
        j = head[b]
        while j != end:
            out_keys[pos] = nodes[3 * j]
            out_tags[pos] = nodes[3 * j + 1]
            pos += 1
            j = nodes[3 * j + 2]
        if pos - start > 1:
            _insertion_sort_range(out_keys, out_tags, start, pos)


# --------------------------------------------------------------------------
# public operations

def _alloc_records(alloc: Allocator, n: int) -> RecordArray:
    return RecordArray(alloc.empty(n, KEY_DTYPE), alloc.empty(n, TAG_DTYPE))


def _release_records(alloc: Allocator, recs: RecordArray) -> None:
    alloc.release(recs.keys)
    alloc.release(recs.tags)


def _max_key(recs: RecordArray) -> int:
    return int(recs.keys.max()) if len(recs) else 0


def insertion_sort(seq, *, alloc: Allocator = DEFAULT_ALLOCATOR) -> RecordArray:
    """Stable shift-and-insert sort. Quadratic; meant for small inputs."""
    seq = as_records(seq)
    out = _alloc_records(alloc, len(seq))
    out.keys[:] = seq.keys
    out.tags[:] = seq.tags
    _insertion_sort_range(out.keys, out.tags, 0, len(out))
    return out


def extract_digit(key: int, digit_index: int, base: int) -> int:
    if digit_index < 0:
        raise ValueError("digit_index must be >= 0")
    if base < 2:
        raise ValueError(f"radix base must be >= 2, got {base}")
    return (int(key) // base**digit_index) % base


def build_radix_plan(seq, base: int = 10, *, M: Optional[int] = None) -> RadixPlan:
    """Smallest digit count d with base**d > max key (d = 1 for empty/all-zero input).

    With a declared range bound ``M`` the digit count covers [0, M] instead,
    so every sequence drawn from the same range gets the same number of passes.
    """
    if base < 2:
        raise ValueError(f"radix base must be >= 2, got {base}")
    max_key = _max_key(as_records(seq))
    if M is not None:
        if max_key > M:
            raise ValueError(f"key {max_key} exceeds range bound M = {M}")
        max_key = M
    digits = 1
    while base**digits <= max_key:
        digits += 1
    return RadixPlan(base, digits)


def counting_sort_by_digit(seq, plan: RadixPlan, digit_index: int, *,
                           alloc: Allocator = DEFAULT_ALLOCATOR) -> RecordArray:
    seq = as_records(seq)
    if not 0 <= digit_index < plan.digits:
        raise ValueError(f"digit_index {digit_index} outside [0, {plan.digits})")
    out = _alloc_records(alloc, len(seq))
    count = alloc.empty(plan.base, np.int64)
    _counting_pass(seq.keys, seq.tags, out.keys, out.tags, count,
                   np.uint64(plan.base**digit_index), np.uint64(plan.base))
    alloc.release(count)
    return out


def radix_sort_lsd(seq, base: int = 10, *, M: Optional[int] = None,
                   alloc: Allocator = DEFAULT_ALLOCATOR) -> RecordArray:
    """LSD radix sort: one stable counting pass per digit, least significant first.

    Auxiliary space is two n-record buffers (one when d = 1) plus a
    ``base``-slot counter, independent of the key range.
    """
    seq = as_records(seq)
    plan = build_radix_plan(seq, base, M=M)
    n = len(seq)
    count = alloc.empty(plan.base, np.int64)
    ubase = np.uint64(plan.base)

    dst = _alloc_records(alloc, n)
    _counting_pass(seq.keys, seq.tags, dst.keys, dst.tags, count, np.uint64(1), ubase)
    if plan.digits > 1:
        spare = _alloc_records(alloc, n)
        for i in range(1, plan.digits):
            src, dst = dst, spare
            _counting_pass(src.keys, src.tags, dst.keys, dst.tags, count,
                           np.uint64(plan.base**i), ubase)
            spare = src
        _release_records(alloc, spare)
    alloc.release(count)
    return dst


def bucket_index(key: int, n: int, M: int) -> int:
    """Bucket of ``key`` among ``n`` equal-width buckets covering [0, M].

    Dividing by M + 1 keeps the maximal key inside bucket n - 1.
    """
    if n < 1:
        raise ValueError(f"bucket count must be >= 1, got {n}")
    if key < 0 or key > M:
        raise ValueError(f"key {key} outside [0, {M}]")
    return (n * key) // (M + 1)


def bucket_sort(seq, M: int, *, alloc: Allocator = DEFAULT_ALLOCATOR) -> RecordArray:
    """Bucket sort: n buckets as linked lists of (key, tag) nodes, each insertion-sorted."""
    seq = as_records(seq)
    if M < 0 or M > MAX_RANGE_BOUND:
        raise ValueError(f"range bound M={M} outside [0, {MAX_RANGE_BOUND}]")
    n = len(seq)
    if n and _max_key(seq) > M:
        bad = int(seq.keys[np.argmax(seq.keys > np.uint64(M))])
        raise ValueError(f"key {bad} outside [0, {M}]")
    out = _alloc_records(alloc, n)
    head = alloc.empty(n, np.uint64)
    nodes = alloc.empty(3 * n, np.uint64)
    wide = n * M > UINT64_MAX
    _bucket_sort_kernel(seq.keys, seq.tags, out.keys, out.tags, head, nodes,
                        np.uint64(M + 1), wide)
    alloc.release(head)
    alloc.release(nodes)
    return out


def _bucket_sort_auto(seq, *, M=None, base=10, alloc=DEFAULT_ALLOCATOR):
    seq = as_records(seq)
    return bucket_sort(seq, _max_key(seq) if M is None else M, alloc=alloc)


ALGORITHMS = {
    "bucket": _bucket_sort_auto,
    "radix": lambda seq, *, M=None, base=10, alloc=DEFAULT_ALLOCATOR: radix_sort_lsd(seq, base, M=M, alloc=alloc),
    "insertion": lambda seq, *, M=None, base=10, alloc=DEFAULT_ALLOCATOR: insertion_sort(seq, alloc=alloc),
}


def get_algorithm(name: str):
    """Uniform ``sort(seq, *, M, base, alloc)`` callable for an algorithm id."""
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}") from None
