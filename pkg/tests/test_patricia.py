import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from setforge import patricia as pt
from setforge.bitops import WORD_MASK
from setforge.patricia import Bin, DyadicRange, Tip
from setforge.validity import check_patricia, desc_range

# keys clustered in a few regions so trees have both Bins and full-ish tips
regions = st.sampled_from([0, 1000, 2**32, 2**63 - 100, WORD_MASK - 300])
keys = st.lists(st.tuples(regions, st.integers(0, 300)).map(lambda rk: min(rk[0] + rk[1], WORD_MASK)), max_size=60)


def contents(t):
    assert check_patricia(t).ok, check_patricia(t)
    return pt.to_asc_list(t)


# ---------------------------------------------------------------------------
# examples


def test_member_examples():
    assert not pt.member(1, None)
    t = Tip(0, 0b1010)
    assert pt.member(1, t) and not pt.member(2, t) and pt.member(3, t)
    assert pt.size(t) == 2


def test_member_probes_against_oracle():
    rng = random.Random(500)
    keys = set(rng.sample(range(1 << 20), 500))
    t = pt.from_list(keys)
    probes = [rng.choice(list(keys)) if i % 2 else rng.randrange(1 << 20) for i in range(10_000)]
    assert all(pt.member(x, t) == (x in keys) for x in probes)


def test_insert_delete_examples():
    assert pt.singleton(67) == Tip(64, 2**3)
    assert pt.insert(3, Tip(0, 0b10)) == Tip(0, 0b1010)
    assert pt.delete(1, Tip(0, 0b10)) is None
    t = Tip(0, 0b10)
    assert pt.insert(1, t) is t
    assert pt.delete(5, t) is t
    assert pt.delete(-1, t) is t
    with pytest.raises(ValueError):
        pt.insert(-1, None)
    with pytest.raises(ValueError):
        pt.insert(2**64, None)


def test_link_examples():
    assert pt.link(0, Tip(0, 1), 64, Tip(64, 1)) == Bin(0, 64, Tip(0, 1), Tip(64, 1))
    assert pt.link(64, Tip(64, 1), 0, Tip(0, 1)) == Bin(0, 64, Tip(0, 1), Tip(64, 1))
    t = pt.link(0, Tip(0, 1), 2**63, Tip(2**63, 1))
    assert (t.mask, t.prefix) == (2**63, 0)
    assert check_patricia(t).ok


def test_set_algebra_examples():
    s = pt.from_list([1, 2, 300])
    assert pt.union(s, None) is s
    assert pt.union(Tip(0, 1), Tip(0, 2)) == Tip(0, 3)
    assert pt.is_subset_of(None, s)
    a, b = pt.from_list([1, 2, 3]), pt.from_list([3, 2, 1])
    assert pt.equals(a, b) and a == b
    one = pt.from_list([1])
    assert not pt.is_proper_subset_of(one, one)
    assert pt.is_proper_subset_of(one, a)


def test_fold_examples():
    assert pt.to_asc_list(Tip(0, 0b1010)) == [1, 3]
    assert pt.to_desc_list(pt.from_list([5, 1, 9])) == [9, 5, 1]
    assert pt.filter(lambda k: k % 2 == 1, Tip(0, 0b1111)) == Tip(0, 0b1010)
    lt, gt = pt.split(2, pt.from_list([1, 2, 3]))
    assert (contents(lt), contents(gt)) == ([1], [3])
    assert pt.map_keys(lambda k: k + 64, Tip(0, 1)) == Tip(64, 1)
    assert pt.foldl_bits(64, lambda acc, k: acc + [k], [], 0b101) == [64, 66]
    assert pt.foldr_bits(64, lambda k, acc: [k] + acc, [], 0b101) == [64, 66]
    assert pt.foldr_bits(0, lambda k, acc: [k] + acc, [], 2**63 | 1) == [0, 63]


def test_extreme_keys():
    t = pt.from_list([0, WORD_MASK, 2**63, 2**63 - 1])
    assert contents(t) == [0, 2**63 - 1, 2**63, WORD_MASK]
    assert t.mask == 2**63
    lt, found, gt = pt.split_member(2**63, t)
    assert found and contents(lt) == [0, 2**63 - 1] and contents(gt) == [WORD_MASK]


def test_dyadic_ranges():
    r = DyadicRange(0, 6)
    assert (r.lo, r.hi) == (0, 63) and 63 in r and 64 not in r
    lo, hi = DyadicRange(1, 7).halves()
    assert (lo, hi) == (DyadicRange(2, 6), DyadicRange(3, 6))
    assert lo.issubset(DyadicRange(1, 7)) and not DyadicRange(1, 7).issubset(lo)
    assert desc_range(None) is None
    assert desc_range(Tip(0, 5)) == DyadicRange(0, 6)
    assert desc_range(Bin(0, 64, Tip(0, 1), Tip(64, 1))) == DyadicRange(0, 7)
    with pytest.raises(ValueError):
        desc_range(Bin(0, 64, Tip(64, 1), Tip(0, 1)))


def test_desc_range_is_minimal():
    # shrinking the height by one loses one of the keys
    t = pt.from_list([5, 70])
    r = desc_range(t)
    assert 5 in r and 70 in r
    for half in r.halves():
        assert not (5 in half and 70 in half)


def test_uniqueness_over_insertion_orders():
    rng = random.Random(11)
    for _ in range(50):
        xs = [rng.getrandbits(rng.choice((7, 12, 64))) for _ in range(rng.randint(0, 80))]
        t = pt.from_list(xs)
        ys = xs[:]
        rng.shuffle(ys)
        assert pt.from_list(ys) == t
        assert pt.from_list(sorted(set(xs), reverse=True)) == t


# ---------------------------------------------------------------------------
# properties against the oracle


@settings(max_examples=200)
@given(keys, keys)
def test_binary_ops_match_sets(xs, ys):
    a, b = pt.from_list(xs), pt.from_list(ys)
    sa, sb = set(xs), set(ys)
    assert contents(pt.union(a, b)) == sorted(sa | sb)
    assert contents(pt.intersection(a, b)) == sorted(sa & sb)
    assert contents(pt.difference(a, b)) == sorted(sa - sb)
    assert pt.disjoint(a, b) == sa.isdisjoint(sb)
    assert pt.is_subset_of(a, b) == (sa <= sb)
    assert pt.is_proper_subset_of(a, b) == (sa < sb)
    assert (a == b) == (sa == sb)
    la, lb = sorted(sa), sorted(sb)
    assert pt.compare_sets(a, b) == (la > lb) - (la < lb)
    # results are canonical: rebuilding from the contents gives the same tree
    assert pt.union(a, b) == pt.from_list(sa | sb)
    assert pt.intersection(a, b) == pt.from_list(sa & sb)
    assert pt.difference(a, b) == pt.from_list(sa - sb)


@given(keys, st.one_of(regions, st.integers(0, WORD_MASK)))
def test_element_ops_match_sets(xs, x):
    t = pt.from_list(xs)
    s = set(xs)
    assert pt.member(x, t) == (x in s) != pt.not_member(x, t)
    assert contents(pt.insert(x, t)) == sorted(s | {x})
    assert contents(pt.delete(x, t)) == sorted(s - {x})
    lt, found, gt = pt.split_member(x, t)
    assert contents(lt) == sorted(y for y in s if y < x)
    assert contents(gt) == sorted(y for y in s if y > x)
    assert found == (x in s)


@given(keys)
def test_folds_and_size(xs):
    t = pt.from_list(xs)
    ys = sorted(set(xs))
    assert pt.to_asc_list(t) == pt.to_list(t) == pt.elems(t) == ys
    assert pt.to_desc_list(t) == ys[::-1]
    assert pt.foldr(lambda k, acc: [k] + acc, [], t) == ys
    assert pt.foldl(lambda acc, k: acc + [k], [], t) == ys
    assert pt.size(t) == len(ys) == sum(tip.bitmap.bit_count() for tip in naive.pt_tips(t) if tip is not None)
    yes, no = pt.partition(lambda k: k % 3 == 0, t)
    assert contents(yes) == [k for k in ys if k % 3 == 0]
    assert contents(no) == [k for k in ys if k % 3 != 0]
    assert naive.pt_keys(t) == ys
    assert pt.unions([t, None, pt.singleton(7)]) == pt.from_list(set(ys) | {7})


def test_patricia_set_facade():
    s = pt.PatriciaSet([67, 3, 1])
    assert list(s) == [1, 3, 67] and list(reversed(s)) == [67, 3, 1]
    assert 67 in s and len(s - pt.PatriciaSet([3])) == 2
    assert list(s | pt.PatriciaSet([500])) == [1, 3, 67, 500]
    assert list(s & pt.PatriciaSet([3, 4])) == [3]
    assert s == pt.PatriciaSet([1, 3, 67])
