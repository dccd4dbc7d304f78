"""Deterministic generators for the six benchmark input cases, plus the
binary sequence file format.

Randomness comes from splitmix64 so a seed reproduces the same sequence on
any platform. The scalar ``rng_next``/``rng_below`` are the reference
definitions; the numba kernels below replay exactly the same stream for
bulk generation.
"""
from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, NamedTuple, Optional, Union

import numpy as np
from numba import njit

from .records import KEY_DTYPE, TAG_DTYPE, RecordArray, as_records

MASK64 = 2**64 - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

MAX_M = 2**40
DEFAULT_SEED = 20120
DEFAULT_M = {1: 10**6, 2: 10**6, 3: 10**6, 4: 10**4, 5: 10**8, 6: 10**6}
CASE_NAMES = {
    1: "uniform random",
    2: "sorted",
    3: "nearly sorted",
    4: "small range",
    5: "large range",
    6: "one-third repeated",
}

MAGIC = b"ISRT"
VERSION = 1
_HEADER = struct.Struct("<4Q")
HEADER_SIZE = len(MAGIC) + 1 + _HEADER.size


@dataclass(frozen=True)
class RngState:
    state: int = 0

    def __post_init__(self):
        if not 0 <= self.state <= MASK64:
            raise ValueError("RNG state must fit in 64 unsigned bits")


def rng_next(state: RngState) -> tuple[RngState, int]:
    s = (state.state + GOLDEN_GAMMA) & MASK64
    z = s
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return RngState(s), z ^ (z >> 31)


def rng_below(state: RngState, bound: int) -> tuple[RngState, int]:
    """Uniform integer in [0, bound) by rejection sampling."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    limit = bound * ((MASK64 + 1) // bound)
    while True:
        state, x = rng_next(state)
        if x < limit:
            return state, x % bound


# --------------------------------------------------------------------------
# bulk kernels; must replay rng_next / rng_below bit for bit

@njit(cache=True)
def _next(state):
    s = state + np.uint64(GOLDEN_GAMMA)
    z = (s ^ (s >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return s, z ^ (z >> np.uint64(31))


@njit(cache=True)
def _below(state, bound):
    # Accept x < bound * floor(2**64 / bound), i.e. x <= 2**64 - 1 - (2**64 mod bound).
    rem = (np.uint64(0) - bound) % bound
    limit = np.uint64(MASK64) - rem
    while True:
        state, x = _next(state)
        if x <= limit:
            return state, x % bound


@njit(cache=True)
def _fill_uniform(state, out, bound):
    for i in range(out.shape[0]):
        state, out[i] = _below(state, bound)
    return state


@njit(cache=True)
def _random_swaps(state, keys, count):
    n = np.uint64(keys.shape[0])
    for _ in range(count):
        state, i = _below(state, n)
        state, j = _below(state, n)
        tmp = keys[i]
        keys[i] = keys[j]
        keys[j] = tmp
    return state


@njit(cache=True)
def _fill_distinct(out, start, start_value, stride, modulus, skip):
    # Walk start_value, start_value + stride, ... mod modulus; stride is coprime
    # with modulus so no value repeats before all of them are visited.
    v = start_value
    i = start
    while i < out.shape[0]:
        if v != skip:
            out[i] = v
            i += 1
        v = (v + stride) % modulus


@njit(cache=True)
def _shuffle(state, keys):
    for i in range(keys.shape[0] - 1, 0, -1):
        state, j = _below(state, np.uint64(i + 1))
        tmp = keys[i]
        keys[i] = keys[j]
        keys[j] = tmp
    return state


# --------------------------------------------------------------------------
# input specs and generation

def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class InputSpec:
    case_id: int
    n: int
    M: Optional[int] = None
    seed: int = DEFAULT_SEED
    repeated_value: Optional[int] = None
    sorted_fraction: float = 0.95

    def __post_init__(self):
        if self.case_id not in DEFAULT_M:
            raise ValueError(f"case_id must be 1..6, got {self.case_id}")
        if self.M is None:
            object.__setattr__(self, "M", DEFAULT_M[self.case_id])
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if not 0 <= self.M <= MAX_M:
            raise ValueError(f"M must be in [0, 2**40], got {self.M}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if not 0.0 <= self.sorted_fraction <= 1.0:
            raise ValueError(f"sorted_fraction must be in [0, 1], got {self.sorted_fraction}")
        if self.case_id == 6:
            if self.repeated_value is None:
                object.__setattr__(self, "repeated_value", self.M // 2)
            if not 0 <= self.repeated_value <= self.M:
                raise ValueError(f"repeated_value {self.repeated_value} outside [0, {self.M}]")
            if _ceil_div(2 * self.n, 3) > self.M:
                raise ValueError(
                    f"case 6 infeasible: ceil(2n/3) = {_ceil_div(2 * self.n, 3)} exceeds M = {self.M}"
                )

    @property
    def swap_count(self) -> int:
        """Displacement swaps applied to case 3."""
        # round() absorbs float noise such as (1 - 0.95) * 100 = 5.000000000000004
        return math.floor(round((1.0 - self.sorted_fraction) * self.n, 9))

    @property
    def repeated_count(self) -> int:
        return _ceil_div(self.n, 3)


def _coprime_stride(state: RngState, modulus: int) -> tuple[RngState, int]:
    if modulus <= 2:
        return state, 1
    state, stride = rng_below(state, modulus - 1)
    stride += 1
    while math.gcd(stride, modulus) != 1:
        stride = stride % (modulus - 1) + 1
    return state, stride


def generate(spec: InputSpec) -> RecordArray:
    """Build the sequence described by ``spec``; tags are positions 0..n-1."""
    n, M = spec.n, spec.M
    keys = np.empty(n, dtype=KEY_DTYPE)
    state = np.uint64(spec.seed)

    if spec.case_id in (1, 2, 3, 4, 5):
        state = _fill_uniform(state, keys, np.uint64(M + 1))
        if spec.case_id in (2, 3):
            keys.sort(kind="stable")
        if spec.case_id == 3 and n:
            _random_swaps(np.uint64(state), keys, spec.swap_count)
    else:
        k = spec.repeated_value
        c = spec.repeated_count
        keys[:c] = k
        if n > c:
            rs, start_value = rng_below(RngState(int(state)), M + 1)
            rs, stride = _coprime_stride(rs, M + 1)
            state = np.uint64(rs.state)
            _fill_distinct(keys, c, np.uint64(start_value), np.uint64(stride),
                           np.uint64(M + 1), np.uint64(k))
        _shuffle(np.uint64(state), keys)

    return RecordArray(keys, np.arange(n, dtype=TAG_DTYPE))


# --------------------------------------------------------------------------
# sequence files

class SequenceFormatError(ValueError):
    pass


class SequenceHeader(NamedTuple):
    case_id: int
    n: int
    M: int
    seed: int


@dataclass
class SequenceFile:
    header: SequenceHeader
    records: RecordArray = field(repr=False)


PathOrFile = Union[str, os.PathLike, BinaryIO]


def encode_sequence(seq, *, case_id: int = 0, M: Optional[int] = None, seed: int = 0) -> bytes:
    seq = as_records(seq)
    max_key = int(seq.keys.max()) if len(seq) else 0
    if M is None:
        M = max_key
    if max_key > M:
        raise ValueError(f"key {max_key} exceeds declared M = {M}")
    header = MAGIC + bytes([VERSION]) + _HEADER.pack(case_id, len(seq), M, seed)
    return header + seq.keys.astype("<u8", copy=False).tobytes()


def decode_sequence(data: bytes) -> SequenceFile:
    if len(data) < HEADER_SIZE:
        if data[: len(MAGIC)] != MAGIC[: len(data)]:
            raise SequenceFormatError("bad magic")
        raise SequenceFormatError(f"truncated header ({len(data)} of {HEADER_SIZE} bytes)")
    if data[:4] != MAGIC:
        raise SequenceFormatError(f"bad magic {data[:4]!r}")
    if data[4] != VERSION:
        raise SequenceFormatError(f"unsupported version {data[4]}")
    header = SequenceHeader(*_HEADER.unpack_from(data, 5))
    expected = HEADER_SIZE + 8 * header.n
    if len(data) < expected:
        raise SequenceFormatError(f"truncated payload: expected {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise SequenceFormatError(f"{len(data) - expected} trailing bytes after payload")
    keys = np.frombuffer(data, dtype="<u8", count=header.n, offset=HEADER_SIZE).astype(KEY_DTYPE)
    if header.n and int(keys.max()) > header.M:
        raise SequenceFormatError(f"key {int(keys.max())} exceeds declared M = {header.M}")
    return SequenceFile(header, RecordArray(keys, np.arange(header.n, dtype=TAG_DTYPE)))


def write_sequence(seq, destination: PathOrFile, *, case_id: int = 0,
                   M: Optional[int] = None, seed: int = 0) -> None:
    """Write keys in the ISRT v1 format. Tags are not stored."""
    data = encode_sequence(seq, case_id=case_id, M=M, seed=seed)
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as f:
            f.write(data)
    else:
        destination.write(data)


def load_sequence(source: PathOrFile) -> SequenceFile:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as f:
            data = f.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    return decode_sequence(data)


def read_sequence(source: PathOrFile) -> RecordArray:
    """Read a sequence file; tags are reassigned as positions."""
    return load_sequence(source).records


def write_spec(spec: InputSpec, destination: PathOrFile) -> RecordArray:
    seq = generate(spec)
    write_sequence(seq, destination, case_id=spec.case_id, M=spec.M, seed=spec.seed)
    return seq
