"""Record sequences: parallel key/tag arrays.

A sequence is stored column-wise so the numba kernels can work on plain
``uint64`` arrays. ``Record`` is the row view used when building small
sequences by hand.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

KEY_DTYPE = np.uint64
TAG_DTYPE = np.uint64


class Record(NamedTuple):
    key: int
    tag: int


@dataclass(eq=False)
class RecordArray:
    keys: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        self.keys = np.ascontiguousarray(self.keys, dtype=KEY_DTYPE)
        self.tags = np.ascontiguousarray(self.tags, dtype=TAG_DTYPE)
        if self.keys.ndim != 1 or self.keys.shape != self.tags.shape:
            raise ValueError("keys and tags must be 1-d arrays of equal length")

    @classmethod
    def from_keys(cls, keys: Iterable[int]) -> "RecordArray":
        """Tag each key with its position."""
        keys = np.asarray(list(keys) if not isinstance(keys, np.ndarray) else keys, dtype=KEY_DTYPE)
        return cls(keys, np.arange(len(keys), dtype=TAG_DTYPE))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "RecordArray":
        pairs = list(pairs)
        keys = np.fromiter((p[0] for p in pairs), dtype=KEY_DTYPE, count=len(pairs))
        tags = np.fromiter((p[1] for p in pairs), dtype=TAG_DTYPE, count=len(pairs))
        return cls(keys, tags)

    @classmethod
    def empty(cls) -> "RecordArray":
        return cls(np.empty(0, KEY_DTYPE), np.empty(0, TAG_DTYPE))

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        for k, t in zip(self.keys.tolist(), self.tags.tolist()):
            yield Record(k, t)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return RecordArray(self.keys[i], self.tags[i])
        return Record(int(self.keys[i]), int(self.tags[i]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RecordArray):
            return NotImplemented
        return np.array_equal(self.keys, other.keys) and np.array_equal(self.tags, other.tags)

    def __repr__(self) -> str:
        if len(self) > 8:
            return f"RecordArray(n={len(self)})"
        return f"RecordArray({self.to_pairs()!r})"

    def to_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.keys.tolist(), self.tags.tolist()))

    def copy(self) -> "RecordArray":
        return RecordArray(self.keys.copy(), self.tags.copy())

    @property
    def nbytes(self) -> int:
        return self.keys.nbytes + self.tags.nbytes


def as_records(seq) -> RecordArray:
    """Accept a RecordArray or an iterable of (key, tag) pairs."""
    if isinstance(seq, RecordArray):
        return seq
    return RecordArray.from_pairs(seq)
