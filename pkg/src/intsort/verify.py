"""Ground truth for the sorts: an independent stable merge sort and the
sortedness / permutation / stability checks.

Nothing here imports from ``sorting_core``; the oracle works on plain Python
tuples so a bug in the kernels cannot vouch for itself.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .records import RecordArray, as_records


class NotAPermutationError(ValueError):
    """Raised by ``is_stable`` when the output is not a rearrangement of the input."""


def _merge_sort(items: list[tuple[int, int]]) -> list[tuple[int, int]]:
    width = 1
    n = len(items)
    src = list(items)
    while width < n:
        dst = []
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j = lo, mid
            while i < mid and j < hi:
                # Ties go to the left run: that is the stability guarantee.
                if src[j][0] < src[i][0]:
                    dst.append(src[j])
                    j += 1
                else:
                    dst.append(src[i])
                    i += 1
            dst.extend(src[i:mid])
            dst.extend(src[j:hi])
        src = dst
        width *= 2
    return src


def oracle_sort(seq) -> RecordArray:
    seq = as_records(seq)
    return RecordArray.from_pairs(_merge_sort(seq.to_pairs()))


def is_sorted(seq) -> bool:
    keys = as_records(seq).keys
    return bool(np.all(keys[:-1] <= keys[1:]))


def is_permutation(a, b) -> bool:
    """Same multiset of (key, tag) pairs."""
    a, b = as_records(a), as_records(b)
    if len(a) != len(b):
        return False
    order_a = np.lexsort((a.tags, a.keys))
    order_b = np.lexsort((b.tags, b.keys))
    return bool(
        np.array_equal(a.keys[order_a], b.keys[order_b])
        and np.array_equal(a.tags[order_a], b.tags[order_b])
    )


def same_keys(a, b) -> bool:
    """Same multiset of keys, ignoring tags."""
    a, b = as_records(a), as_records(b)
    return len(a) == len(b) and np.array_equal(np.sort(a.keys), np.sort(b.keys))


def _tags_by_key(seq: RecordArray) -> dict[int, list[int]]:
    groups = defaultdict(list)
    for k, t in zip(seq.keys.tolist(), seq.tags.tolist()):
        groups[k].append(t)
    return groups


def is_stable(input_seq, output_seq) -> bool:
    """True iff every key's tags appear in the same relative order in both.

    Tags need not be positions, so hand-built sequences work too.
    """
    input_seq, output_seq = as_records(input_seq), as_records(output_seq)
    if not is_permutation(input_seq, output_seq):
        raise NotAPermutationError("output is not a permutation of the input")
    return _tags_by_key(input_seq) == _tags_by_key(output_seq)


def first_violation(original, result) -> str | None:
    """Name of the first failed property for file-level checks, or None.

    Tags in sequence files are positional, so the permutation check compares
    keys only.
    """
    if not is_sorted(result):
        return "not sorted"
    if not same_keys(original, result):
        return "not a permutation"
    return None

