"""Allocation accounting for the sorts' auxiliary buffers.

Every buffer a sort needs (buckets, counters, output) is requested from an
allocator. The default one just calls numpy; ``CountingAllocator`` also
keeps a running total and its high-water mark. The input sequence is never
allocated through it, so the peak is auxiliary memory only.
"""
from __future__ import annotations

import numpy as np


class Allocator:
    def empty(self, n: int, dtype) -> np.ndarray:
        return np.empty(n, dtype=dtype)

    def zeros(self, n: int, dtype) -> np.ndarray:
        return np.zeros(n, dtype=dtype)

    def release(self, arr: np.ndarray) -> None:
        pass


class CountingAllocator(Allocator):
    def __init__(self):
        self.current = 0
        self.peak = 0
        self.allocations = 0
        self._live: dict[int, int] = {}

    def _track(self, arr: np.ndarray) -> np.ndarray:
        self._live[id(arr)] = arr.nbytes
        self.current += arr.nbytes
        self.allocations += 1
        if self.current > self.peak:
            self.peak = self.current
        return arr

    def empty(self, n, dtype):
        return self._track(np.empty(n, dtype=dtype))

    def zeros(self, n, dtype):
        return self._track(np.zeros(n, dtype=dtype))

    def release(self, arr):
        nbytes = self._live.pop(id(arr), None)
        if nbytes is None:
            raise ValueError("releasing a buffer this allocator did not hand out")
        self.current -= nbytes


DEFAULT_ALLOCATOR = Allocator()
