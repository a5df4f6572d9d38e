import functools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from setforge import wbtree as wb
from setforge.harness.audit import audited, witness_link
from setforge.validity import check_wbset

keys = st.lists(st.integers(-200, 200), max_size=60)


def build(xs):
    return wb.from_list(xs)


def contents(t):
    assert check_wbset(t).ok, check_wbset(t)
    return wb.to_asc_list(t)


# ---------------------------------------------------------------------------
# balance predicates


@pytest.mark.parametrize("s1, s2, want", [(0, 0, True), (2, 0, False), (3, 1, True)])
def test_balanced_examples(s1, s2, want):
    assert wb.balanced(s1, s2) is want


@pytest.mark.parametrize("s1, s2, want", [(0, 0, True), (4, 1, True), (5, 1, False)])
def test_bal_star_examples(s1, s2, want):
    assert wb.bal_star(s1, s2) is want


def test_bal_star_closed_form():
    # delta*s1 <= delta^2*s2 + delta*s2 + s2 with delta = 3 is 3*s1 <= 13*s2
    for s1 in range(60):
        for s2 in range(60):
            assert wb.bal_star(s1, s2) == (3 * s1 <= 13 * s2 and s2 <= s1)


def test_weaker_precondition_accepts_more():
    for s1 in range(80):
        for s2 in range(80):
            if wb.historical_balance_left_pre(s1, s2):
                assert wb.balance_left_pre(s1, s2)
    # the case link produces: 13 against 3
    assert not wb.historical_balance_left_pre(13, 3)
    assert wb.balance_left_pre(13, 3)


def test_witness_link_hits_the_gap():
    x, l, r = witness_link()
    assert wb.size(l) == 3 and wb.size(r) == 13
    assert (wb.size(r.left), wb.size(r.right)) == (9, 3)
    with audited() as log:
        t = wb.link(x, l, r)
    assert ("L", 13, 3) in log.witnesses
    assert not log.violations
    assert contents(t) == [0, 1, 2, 5] + list(range(10, 19)) + [20, 30, 31, 32]


def test_balance_left_precondition_is_asserted():
    l = wb.from_distinct_asc_list(range(20))
    with pytest.raises(AssertionError, match="precondition"):
        wb.balance_left(100, l, None)


# ---------------------------------------------------------------------------
# examples


def _shapes(n, lo):
    """Every tree shape with ``n`` nodes over keys ``lo .. lo + n - 1``."""
    if n == 0:
        yield None
        return
    for k in range(n):
        for l in _shapes(k, lo):
            for r in _shapes(n - 1 - k, lo + k + 1):
                yield wb.Bin(n, lo + k, l, r)


def test_balance_over_all_small_shapes():
    valid = {n: [t for t in _shapes(n, 0) if check_wbset(t).ok] for n in range(5)}
    for nl in range(5):
        for nr in range(5):
            for side in ("L", "R"):
                heavy, light = (nl, nr) if side == "L" else (nr, nl)
                if not wb.balance_left_pre(heavy, light):
                    continue
                for l in valid[nl]:
                    for r in valid[nr]:
                        r = wb.map_monotonic(lambda v: v + nl + 1, r)
                        fn = wb.balance_left if side == "L" else wb.balance_right
                        t = fn(nl, l, r)
                        assert contents(t) == list(range(nl + nr + 1))
    # size 2 against nothing rotates: the new root is l's root or its inner child
    for l in valid[2]:
        t = wb.balance_left(2, l, None)
        inner = l.right if l.right is not None else l.left
        assert t.elem in (l.elem, inner.elem)
        assert t.elem == (l.elem if l.left is not None else l.right.elem)


def test_small_examples():
    assert wb.balance_left(1, None, None).size == 1
    t = wb.balance_left(5, naive.wb_from_sorted([1, 2, 3, 4]), wb.singleton(6))
    assert contents(t) == [1, 2, 3, 4, 5, 6]
    assert wb.insert(5, None).size == 1
    five = wb.singleton(5)
    assert wb.insert(5, five) is five
    assert not wb.member(5, None)
    assert wb.member(2, build([1, 2, 3]))
    assert wb.lookup_min(build([3, 1, 2])) == 1
    assert wb.lookup_max(build([3, 1, 2])) == 3
    assert wb.lookup_min(None) is None


def test_link_examples():
    assert wb.link(7, None, None).size == 1
    assert contents(wb.link(5, build([1, 2, 3, 4]), build([6]))) == [1, 2, 3, 4, 5, 6]
    t = wb.link(50, wb.singleton(1), wb.from_distinct_asc_list(range(51, 101)))
    assert wb.size(t) == 52
    assert contents(t) == [1] + list(range(50, 101))


def test_set_algebra_examples():
    s = build([1, 2, 3])
    assert wb.union(s, None) is s
    assert contents(wb.union(build([1, 2]), build([2, 3]))) == [1, 2, 3]
    lt, gt = wb.split(2, s)
    assert (contents(lt), contents(gt)) == ([1], [3])
    assert wb.split(0, None) == (None, None)
    lt, found, gt = wb.split_member(2, build([1, 3]))
    assert (contents(lt), found, contents(gt)) == ([1], False, [3])
    assert wb.delete(5, None) is None
    assert contents(wb.delete(2, s)) == [1, 3]
    x, rest = wb.min_view(build([3, 1, 2]))
    assert (x, contents(rest)) == (1, [2, 3])


def test_construction_examples():
    assert wb.from_distinct_asc_list([]) is None
    t = wb.from_distinct_asc_list([1, 2, 3])
    assert wb.size(t) == 3 and check_wbset(t).ok
    t = wb.from_list([2, 1, 2, 3])
    assert contents(t) == [1, 2, 3] and wb.size(t) == 3
    assert wb.from_asc_list([1, 1, 2, 2, 2, 5]) is not None
    assert contents(wb.from_asc_list([1, 1, 2, 2, 2, 5])) == [1, 2, 5]
    assert contents(wb.from_desc_list([5, 5, 2, 1, 1])) == [1, 2, 5]
    assert contents(wb.from_distinct_desc_list([9, 4, 1])) == [1, 4, 9]


def test_fold_and_query_examples():
    assert wb.to_asc_list(None) == []
    assert wb.to_asc_list(build([3, 1, 2])) == [1, 2, 3]
    assert wb.foldr(lambda x, acc: x + acc, 0, build([1, 2, 3])) == 6
    assert wb.is_subset_of(None, build([1]))
    yes, no = wb.partition(lambda x: x % 2 == 0, build([1, 2, 3, 4]))
    assert (contents(yes), contents(no)) == ([2, 4], [1, 3])
    assert contents(wb.take(2, build([5, 1, 3]))) == [1, 3]


def test_thousand_random_inserts():
    rng = random.Random(5)
    xs = list(range(1000))
    rng.shuffle(xs)
    t = None
    for x in xs:
        t = wb.insert(x, t)
    assert check_wbset(t).ok and wb.size(t) == 1000
    assert naive.wb_valid(t)


def test_from_distinct_asc_list_large_is_valid():
    for n in (0, 1, 2, 3, 7, 8, 100, 1023, 1024, 1025, 5000):
        t = wb.from_distinct_asc_list(range(n))
        assert check_wbset(t).ok
        assert wb.to_asc_list(t) == list(range(n))


# ---------------------------------------------------------------------------
# sharing


def test_sharing_on_no_op_updates():
    t = build(range(0, 100, 2))
    assert wb.insert(40, t) is t
    assert wb.delete(41, t) is t
    assert wb.union(t, None) is t and wb.union(None, t) is t
    assert wb.difference(t, None) is t
    assert wb.difference(t, build([1, 3, 5])) is t
    assert wb.intersection(t, t) is t


def test_equal_elements_keep_stored_representative():
    # elements that compare equal but are distinct objects
    class K:
        def __init__(self, k, tag):
            self.k, self.tag = k, tag

        def __lt__(self, other):
            return self.k < other.k

    a, b = K(1, "old"), K(1, "new")
    t = wb.singleton(a)
    assert wb.insert(b, t) is t
    assert wb.insert_r(b, t).elem.tag == "old"


def test_external_comparator_via_cmp_to_key():
    def cmp(a, b):
        return (b > a) - (b < a)  # reverse order

    key = functools.cmp_to_key(cmp)
    t = wb.from_list([key(x) for x in [1, 5, 3]])
    assert [k.obj for k in wb.to_asc_list(t)] == [5, 3, 1]


# ---------------------------------------------------------------------------
# properties against the oracle


@settings(max_examples=200)
@given(keys, keys)
def test_binary_ops_match_sets(xs, ys):
    a, b = build(xs), build(ys)
    sa, sb = set(xs), set(ys)
    assert contents(wb.union(a, b)) == sorted(sa | sb)
    assert contents(wb.union_generic(a, b)) == sorted(sa | sb)
    assert contents(wb.intersection(a, b)) == sorted(sa & sb)
    assert contents(wb.difference(a, b)) == sorted(sa - sb)
    assert wb.disjoint(a, b) == sa.isdisjoint(sb)
    assert wb.is_subset_of(a, b) == (sa <= sb)
    assert wb.equals(a, b) == (sa == sb)
    la, lb = sorted(sa), sorted(sb)
    assert wb.compare_sets(a, b) == (la > lb) - (la < lb)


@given(keys, st.integers(-210, 210))
def test_element_ops_match_sets(xs, x):
    t = build(xs)
    s = set(xs)
    assert wb.member(x, t) == (x in s)
    assert contents(wb.insert(x, t)) == sorted(s | {x})
    assert contents(wb.delete(x, t)) == sorted(s - {x})
    lt, found, gt = wb.split_member(x, t)
    assert contents(lt) == sorted(y for y in s if y < x)
    assert contents(gt) == sorted(y for y in s if y > x)
    assert found == (x in s)


@given(keys, st.integers(-3, 70))
def test_positional_ops(xs, n):
    t = build(xs)
    ys = sorted(set(xs))
    k = max(n, 0)
    assert contents(wb.take(n, t)) == ys[:k]
    assert contents(wb.drop(n, t)) == ys[k:]
    lo, hi = wb.split_at(n, t)
    assert (contents(lo), contents(hi)) == (ys[:k], ys[k:])


@given(keys)
def test_views_and_folds(xs):
    t = build(xs)
    ys = sorted(set(xs))
    assert wb.to_desc_list(t) == ys[::-1]
    assert wb.to_list(t) == wb.elems(t) == ys
    assert wb.foldl(lambda acc, x: acc + [x], [], t) == ys
    assert wb.foldl_strict(lambda acc, x: acc + [x], [], t) == ys
    assert wb.foldr_strict(lambda x, acc: [x] + acc, [], t) == ys
    if ys:
        assert contents(wb.delete_min(t)) == ys[1:]
        assert contents(wb.delete_max(t)) == ys[:-1]
        x, rest = wb.max_view(t)
        assert x == ys[-1] and contents(rest) == ys[:-1]
    else:
        assert wb.min_view(t) is None and wb.max_view(t) is None
    assert contents(wb.map_monotonic(lambda v: 3 * v, t)) == [3 * v for v in ys]
    assert contents(wb.from_distinct_asc_list(ys)) == ys
    assert contents(wb.unions([t, build([1000]), None])) == sorted(set(ys) | {1000})


@given(keys, keys)
def test_merge_and_glue(xs, ys):
    lo = sorted(set(xs))
    hi = sorted(set(y + 1000 for y in ys))
    assert contents(wb.merge(build(lo), build(hi))) == lo + hi
    assert contents(wb.link(500, build(lo), build(hi))) == lo + [500] + hi


# ---------------------------------------------------------------------------
# facade


def test_wbset_facade():
    s = wb.WBSet([3, 1, 2])
    assert list(s) == [1, 2, 3] and list(reversed(s)) == [3, 2, 1]
    assert 2 in s and 7 not in s and len(s) == 3 and s
    assert list(s | wb.WBSet([9])) == [1, 2, 3, 9]
    assert list(s & wb.WBSet([2, 3, 4])) == [2, 3]
    assert list(s - wb.WBSet([1])) == [2, 3]
    assert s == wb.WBSet([1, 2, 3]) and s != wb.WBSet([1])
    assert wb.WBSet([1, 2]) < wb.WBSet([1, 3])
    assert s.issubset(wb.WBSet(range(5))) and s.isdisjoint(wb.WBSet([7]))
    assert list(s.insert(0).delete(3)) == [0, 1, 2]
    assert not wb.WBSet()
    assert repr(s) == "WBSet([1, 2, 3])"
