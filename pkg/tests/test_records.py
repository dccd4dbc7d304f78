import numpy as np
import pytest

from intsort.memory import CountingAllocator
from intsort.records import Record, RecordArray, as_records


def test_from_pairs_round_trip():
    pairs = [(3, 10), (1, 11), (3, 12)]
    ra = RecordArray.from_pairs(pairs)
    assert ra.to_pairs() == pairs
    assert list(ra) == [Record(3, 10), Record(1, 11), Record(3, 12)]
    assert ra[1] == Record(1, 11)
    assert len(ra[1:]) == 2


def test_from_keys_tags_are_positions():
    ra = RecordArray.from_keys([5, 4, 4])
    assert ra.tags.tolist() == [0, 1, 2]
    assert ra.keys.dtype == np.uint64


def test_equality_includes_tags():
    a = RecordArray.from_pairs([(1, 0), (1, 1)])
    assert a == RecordArray.from_pairs([(1, 0), (1, 1)])
    assert a != RecordArray.from_pairs([(1, 1), (1, 0)])


def test_mismatched_columns_rejected():
    with pytest.raises(ValueError):
        RecordArray(np.zeros(3), np.zeros(2))


def test_as_records_passthrough():
    ra = RecordArray.empty()
    assert as_records(ra) is ra
    assert len(as_records([])) == 0


def test_counting_allocator_tracks_high_water_mark():
    alloc = CountingAllocator()
    a = alloc.empty(100, np.uint64)
    b = alloc.zeros(50, np.int64)
    assert alloc.current == alloc.peak == 1200
    alloc.release(a)
    assert alloc.current == 400
    c = alloc.empty(10, np.uint64)
    assert alloc.peak == 1200
    alloc.release(b)
    alloc.release(c)
    assert alloc.current == 0


def test_counting_allocator_rejects_foreign_buffer():
    with pytest.raises(ValueError):
        CountingAllocator().release(np.empty(3))
