import random

import pytest
from hypothesis import given, settings, strategies as st

from framestop.treap import MultisetIndex

from oracles import MultisetScan


def test_insert_zero_values():
    index = MultisetIndex()
    index.insert(0.0, 3)
    assert index.totals() == (3, 0.0)


def test_equal_keys_merge():
    index = MultisetIndex()
    index.insert(1.0, 1)
    index.insert(1.0, 2)
    assert index.totals() == (3, 3.0)
    assert index.max_depth() == 1


def test_mixed_multiplicities():
    index = MultisetIndex()
    index.insert(0.2, 1)
    index.insert(0.7, 2)
    count, total = index.totals()
    assert count == 3
    assert abs(total - 1.6) < 1e-12


def test_below_empty():
    assert MultisetIndex().below(123.0) == (0, 0.0)


def test_below_counts_and_sums():
    index = MultisetIndex()
    index.insert(0.0, 2)
    index.insert(1.0, 1)
    assert index.below(0.5) == (2, 0.0)


def test_below_is_strict():
    index = MultisetIndex()
    index.insert(0.0, 2)
    index.insert(1.0, 1)
    assert index.below(0.0) == (0, 0.0)
    assert index.below(1.0) == (2, 0.0)


def test_totals_empty():
    assert MultisetIndex().totals() == (0, 0.0)


def test_zero_multiplicity_rejected():
    with pytest.raises(ValueError):
        MultisetIndex().insert(1.0, 0)


@given(
    st.lists(
        st.tuples(st.sampled_from([0.0, 0.1, 0.25, 0.5, 0.9, 1.0]), st.integers(1, 5)),
        max_size=60,
    ),
    st.floats(min_value=-0.5, max_value=1.5),
    st.integers(0, 2**30),
)
@settings(max_examples=200)
def test_below_matches_brute_force(pairs, bound, seed):
    index = MultisetIndex(random.Random(seed))
    scan = MultisetScan()
    for value, mult in pairs:
        index.insert(value, mult)
        scan.insert(value, mult)
    got = index.below(bound)
    want_count, want_sum = scan.below(bound)
    assert got.count == want_count
    assert abs(got.sum - want_sum) <= 1e-12
    total_count, total_sum = scan.totals()
    assert index.totals()[0] == total_count
    assert abs(index.totals()[1] - total_sum) <= 1e-12


def test_expected_depth_stays_logarithmic():
    rng = random.Random(7)
    index = MultisetIndex(random.Random(99))
    values = [rng.random() for _ in range(10_000)]
    assert len(set(values)) == len(values)
    for value in values:
        index.insert(value)
    assert index.size == 10_000
    assert index.max_depth() <= 60


def test_bulk_insert_equivalent_to_repeated():
    a = MultisetIndex(random.Random(1))
    b = MultisetIndex(random.Random(2))
    a.insert(0.3, 500)
    for _ in range(500):
        b.insert(0.3)
    assert a.totals() == b.totals()
    assert a.below(0.31) == b.below(0.31)
