import pytest
from hypothesis import given
from hypothesis import strategies as st

from setforge import oracle

small_sets = st.frozensets(st.integers(-50, 50), max_size=20)


def tup(s):
    return tuple(sorted(s))


def test_examples():
    assert oracle.o_union((1, 2), (2, 3)) == (1, 2, 3)
    assert oracle.o_split(2, (1, 2, 3)) == ((1,), True, (3,))
    assert oracle.o_difference((1, 2, 3), (2,)) == (1, 3)
    assert oracle.o_from_iter([2, 1, 2, 3]) == (1, 2, 3)


def test_enumerate_universe():
    assert oracle.enumerate_universe(0) == [()]
    assert len(oracle.enumerate_universe(2)) == 4
    subsets = oracle.enumerate_universe(8)
    assert len(subsets) == 256
    assert len(set(subsets)) == 256
    assert all(oracle.is_oracle_set(s) for s in subsets)
    with pytest.raises(ValueError):
        oracle.enumerate_universe(17)
    with pytest.raises(ValueError):
        oracle.enumerate_universe(-1)


@given(small_sets, small_sets)
def test_binary_ops_match_python_sets(a, b):
    ta, tb = tup(a), tup(b)
    assert oracle.o_union(ta, tb) == tup(a | b)
    assert oracle.o_intersection(ta, tb) == tup(a & b)
    assert oracle.o_difference(ta, tb) == tup(a - b)
    assert oracle.o_subset(ta, tb) == (a <= b)
    assert oracle.o_equal(ta, tb) == (a == b)
    assert oracle.o_compare(ta, tb) == (ta > tb) - (ta < tb)


@given(small_sets, st.integers(-60, 60))
def test_element_ops_match_python_sets(a, x):
    ta = tup(a)
    assert oracle.o_member(x, ta) == (x in a)
    assert oracle.o_insert(x, ta) == tup(a | {x})
    assert oracle.o_delete(x, ta) == tup(a - {x})
    lt, found, gt = oracle.o_split(x, ta)
    assert lt == tup(y for y in a if y < x)
    assert gt == tup(y for y in a if y > x)
    assert found == (x in a)
    assert oracle.o_size(ta) == len(a)


@given(small_sets)
def test_results_are_oracle_sets(a):
    ta = tup(a)
    assert oracle.is_oracle_set(ta)
    assert oracle.o_filter(lambda x: x % 2 == 0, ta) == tup(x for x in a if x % 2 == 0)
    assert not oracle.is_oracle_set((1, 1))
