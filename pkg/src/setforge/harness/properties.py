"""Registered property catalog, the runner and the shrinker.

Every property is registered once per structure, under ``wb.<name>`` and
``pt.<name>``, except the few that only make sense for one of them.  A
property receives already-built trees (plus their oracle tuples and the
scripts that made them) and raises :class:`PropertyFailed` when the law does
not hold.  Any other exception raised while building or checking, including
a violated rebalancing precondition, also counts as a failure.

Properties are flagged by origin: ``"verified"`` for laws that the verified
development states explicitly and ``"suite"`` for identities mirrored from
the usual containers test suite.
"""

import random
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from setforge import oracle
from setforge.bitops import WORD_MASK
from setforge.harness.scripts import (
    KEY_OPS,
    LIST_OPS,
    STRUCTURES,
    Op,
    OpScript,
    ScriptFailure,
    format_scripts,
    generate_script,
    run_script,
)

DEFAULT_MAX_OPS = 30


class PropertyFailed(AssertionError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class Property:
    id: str
    structure: str
    arity: int
    check: object
    origin: str
    max_ops: int = DEFAULT_MAX_OPS
    doc: str = ""


@dataclass
class PropertyResult:
    property_id: str
    cases_run: int
    status: str  # "pass" or "fail"
    counterexample: list = None  # list of OpScript on failure
    diagnostics: str = ""
    report: object = None  # ValidityReport, when the failure was ill-formedness
    shrink_steps: int = 0

    @property
    def passed(self):
        return self.status == "pass"

    @property
    def counterexample_ops(self):
        """Total operations across all scripts of the counterexample."""
        if not self.counterexample:
            return 0
        return sum(len(s.ops) for s in self.counterexample)

    def format_counterexample(self):
        if self.counterexample is None:
            return ""
        return format_scripts(self.counterexample)

    @property
    def rules(self):
        return self.report.rules if self.report is not None else []


REGISTRY = {}


def register(structures, name, arity, origin, max_ops=DEFAULT_MAX_OPS):
    def deco(fn):
        for sname in structures:
            pid = "%s.%s" % (sname, name)
            if pid in REGISTRY:
                raise ValueError("duplicate property %s" % pid)
            REGISTRY[pid] = Property(pid, sname, arity, fn, origin, max_ops, (fn.__doc__ or "").strip())
        return fn

    return deco


BOTH = ("wb", "pt")


def property_ids(pattern=None):
    ids = sorted(REGISTRY)
    if pattern is None:
        return ids
    rx = re.compile(pattern)
    return [i for i in ids if rx.search(i)]


# ---------------------------------------------------------------------------
# helpers for property bodies


def _need(cond, message, *args):
    if not cond:
        raise PropertyFailed(message % args if args else message)


def _valid(S, t, what):
    report = S.check(t)
    if not report.ok:
        raise PropertyFailed("%s is ill-formed:\n%s" % (what, report), report)
    return t


def _same(S, t, expect, what):
    """``t`` is well-formed and holds exactly the oracle tuple ``expect``."""
    _valid(S, t, what)
    got = tuple(S.to_asc_list(t))
    _need(got == tuple(expect), "%s holds %r, expected %r", what, list(got), list(expect))


def _probes(scripts, oracles):
    """Keys worth asking about: everything mentioned, and neighbours."""
    ks = set()
    for s in scripts:
        ks.update(s.keys())
    for o in oracles:
        ks.update(o)
    out = set(ks)
    for k in ks:
        if k > 0:
            out.add(k - 1)
        if k < WORD_MASK:
            out.add(k + 1)
    out.add(0)
    return sorted(out)


def _empty():
    return None


# ---------------------------------------------------------------------------
# union, intersection and difference laws


@register(BOTH, "union-assoc", 3, "verified")
def _union_assoc(S, ts, os, scripts):
    """union a (union b c) == union (union a b) c"""
    a, b, c = ts
    lhs = _valid(S, S.union(a, S.union(b, c)), "union a (union b c)")
    rhs = _valid(S, S.union(S.union(a, b), c), "union (union a b) c")
    _need(S.equals(lhs, rhs), "union is not associative: %r vs %r", S.to_asc_list(lhs), S.to_asc_list(rhs))
    _same(S, lhs, oracle.o_union(os[0], oracle.o_union(os[1], os[2])), "union a (union b c)")


@register(BOTH, "union-comm", 2, "verified")
def _union_comm(S, ts, os, scripts):
    """union a b == union b a"""
    a, b = ts
    ab = _valid(S, S.union(a, b), "union a b")
    ba = _valid(S, S.union(b, a), "union b a")
    _need(S.equals(ab, ba), "union is not commutative: %r vs %r", S.to_asc_list(ab), S.to_asc_list(ba))


@register(BOTH, "union-idem", 1, "verified")
def _union_idem(S, ts, os, scripts):
    """union a a == a"""
    (a,) = ts
    _same(S, S.union(a, a), os[0], "union a a")


@register(BOTH, "union-oracle", 2, "suite")
def _union_oracle(S, ts, os, scripts):
    _same(S, S.union(*ts), oracle.o_union(*os), "union a b")


@register(BOTH, "intersection-oracle", 2, "suite")
def _intersection_oracle(S, ts, os, scripts):
    _same(S, S.intersection(*ts), oracle.o_intersection(*os), "intersection a b")


@register(BOTH, "difference-oracle", 2, "suite")
def _difference_oracle(S, ts, os, scripts):
    _same(S, S.difference(*ts), oracle.o_difference(*os), "difference a b")


@register(BOTH, "intersection-comm", 2, "suite")
def _intersection_comm(S, ts, os, scripts):
    a, b = ts
    ab = _valid(S, S.intersection(a, b), "intersection a b")
    ba = _valid(S, S.intersection(b, a), "intersection b a")
    _need(S.equals(ab, ba), "intersection is not commutative")


@register(BOTH, "intersection-assoc", 3, "suite")
def _intersection_assoc(S, ts, os, scripts):
    a, b, c = ts
    lhs = _valid(S, S.intersection(a, S.intersection(b, c)), "intersection a (intersection b c)")
    rhs = _valid(S, S.intersection(S.intersection(a, b), c), "intersection (intersection a b) c")
    _need(S.equals(lhs, rhs), "intersection is not associative")


@register(BOTH, "union-distrib", 3, "suite")
def _union_distrib(S, ts, os, scripts):
    """a & (b | c) == (a & b) | (a & c)"""
    a, b, c = ts
    lhs = _valid(S, S.intersection(a, S.union(b, c)), "a & (b | c)")
    rhs = _valid(S, S.union(S.intersection(a, b), S.intersection(a, c)), "(a & b) | (a & c)")
    _need(S.equals(lhs, rhs), "intersection does not distribute over union")


@register(BOTH, "difference-demorgan", 3, "suite")
def _difference_demorgan(S, ts, os, scripts):
    """a - (b | c) == (a - b) & (a - c) and a - (b & c) == (a - b) | (a - c)"""
    a, b, c = ts
    ab, ac = S.difference(a, b), S.difference(a, c)
    lhs = _valid(S, S.difference(a, S.union(b, c)), "a - (b | c)")
    rhs = _valid(S, S.intersection(ab, ac), "(a - b) & (a - c)")
    _need(S.equals(lhs, rhs), "a - (b | c) differs from (a - b) & (a - c)")
    lhs = _valid(S, S.difference(a, S.intersection(b, c)), "a - (b & c)")
    rhs = _valid(S, S.union(ab, ac), "(a - b) | (a - c)")
    _need(S.equals(lhs, rhs), "a - (b & c) differs from (a - b) | (a - c)")


@register(BOTH, "intersection-via-difference", 2, "suite")
def _intersection_via_difference(S, ts, os, scripts):
    """a & b == a - (a - b)"""
    a, b = ts
    lhs = _valid(S, S.intersection(a, b), "a & b")
    rhs = _valid(S, S.difference(a, S.difference(a, b)), "a - (a - b)")
    _need(S.equals(lhs, rhs), "a & b differs from a - (a - b)")


@register(BOTH, "difference-disjoint", 2, "suite")
def _difference_disjoint(S, ts, os, scripts):
    """(a - b) and b are disjoint, and (a - b) | (a & b) == a"""
    a, b = ts
    d = S.difference(a, b)
    _need(S.disjoint(d, b), "a - b is not disjoint from b")
    _same(S, S.union(d, S.intersection(a, b)), os[0], "(a - b) | (a & b)")


@register(BOTH, "disjoint-oracle", 2, "suite")
def _disjoint_oracle(S, ts, os, scripts):
    expect = oracle.o_intersection(*os) == ()
    _need(S.disjoint(*ts) == expect, "disjoint gives %r, oracle %r", not expect, expect)


@register(BOTH, "subset-oracle", 2, "suite")
def _subset_oracle(S, ts, os, scripts):
    a, b = ts
    for x, y, ox, oy in ((a, b, os[0], os[1]), (b, a, os[1], os[0])):
        expect = oracle.o_subset(ox, oy)
        got = S.is_subset_of(x, y)
        _need(got == expect, "isSubsetOf %r %r gives %r", list(ox), list(oy), got)
    _need(S.is_subset_of(a, S.union(a, b)), "a is not a subset of union a b")
    _need(S.is_subset_of(S.intersection(a, b), b), "intersection a b is not a subset of b")


@register(("pt",), "proper-subset-oracle", 2, "suite")
def _proper_subset_oracle(S, ts, os, scripts):
    a, b = ts
    expect = oracle.o_subset(os[0], os[1]) and os[0] != os[1]
    _need(S.is_proper_subset_of(a, b) == expect, "isProperSubsetOf gives %r", not expect)
    cmp = S.subset_cmp(a, b)
    if os[0] == os[1]:
        want = S.EQ
    elif oracle.o_subset(os[0], os[1]):
        want = S.LT
    else:
        want = S.GT  # "not a subset", whether a superset or incomparable
    _need(cmp == want, "subset comparison gives %r, expected %r", cmp, want)


# ---------------------------------------------------------------------------
# monoid, equality and ordering laws


@register(BOTH, "monoid-identity", 1, "verified")
def _monoid_identity(S, ts, os, scripts):
    """union empty a == a == union a empty"""
    (a,) = ts
    _same(S, S.union(_empty(), a), os[0], "union empty a")
    _same(S, S.union(a, _empty()), os[0], "union a empty")
    _same(S, S.unions([a]), os[0], "unions [a]")


@register(BOTH, "monoid-assoc", 3, "verified")
def _monoid_assoc(S, ts, os, scripts):
    """unions [a, b, c] == union a (union b c) == foldr union empty"""
    a, b, c = ts
    lhs = _valid(S, S.unions([a, b, c]), "unions [a, b, c]")
    rhs = _valid(S, S.union(a, S.union(b, c)), "union a (union b c)")
    _need(S.equals(lhs, rhs), "unions differs from nested union")
    _need(S.unions([]) is None, "unions [] is not empty")


@register(BOTH, "eq-oracle", 2, "verified")
def _eq_oracle(S, ts, os, scripts):
    """equality is reflexive, symmetric and agrees with the denotation"""
    a, b = ts
    _need(S.equals(a, a), "a does not equal itself")
    _need(S.equals(a, b) == S.equals(b, a), "equality is not symmetric")
    _need(S.equals(a, b) == (os[0] == os[1]), "equals gives %r on %r, %r", S.equals(a, b), list(os[0]), list(os[1]))
    # rebuilding from the contents gives an equal set
    c = S.from_list(list(reversed(os[0])))
    _need(S.equals(a, c), "a differs from a rebuild of its own elements")


def _le(S, a, b):
    return S.compare_sets(a, b) <= 0


@register(BOTH, "ord-antisym", 2, "verified")
def _ord_antisym(S, ts, os, scripts):
    a, b = ts
    if _le(S, a, b) and _le(S, b, a):
        _need(S.equals(a, b), "a <= b and b <= a but a != b")


@register(BOTH, "ord-trans", 3, "verified")
def _ord_trans(S, ts, os, scripts):
    a, b, c = sorted(ts, key=lambda t: tuple(S.to_asc_list(t)))
    # sorting by the denotation makes the premise hold; check each link
    _need(_le(S, a, b) and _le(S, b, c), "compare disagrees with the ascending-list order")
    _need(_le(S, a, c), "a <= b and b <= c but not a <= c")
    x, y, z = ts
    if _le(S, x, y) and _le(S, y, z):
        _need(_le(S, x, z), "a <= b and b <= c but not a <= c")


@register(BOTH, "ord-total", 2, "verified")
def _ord_total(S, ts, os, scripts):
    a, b = ts
    _need(_le(S, a, b) or _le(S, b, a), "neither a <= b nor b <= a")
    _need(S.compare_sets(a, b) == -S.compare_sets(b, a), "compare is not antisymmetric in sign")


@register(BOTH, "ord-compare-consistent", 2, "verified")
def _ord_compare_consistent(S, ts, os, scripts):
    """compare agrees with <=, == and lexicographic order on the elements"""
    a, b = ts
    c = S.compare_sets(a, b)
    _need(c == oracle.o_compare(*os), "compare gives %r, oracle %r", c, oracle.o_compare(*os))
    _need((c == 0) == S.equals(a, b), "compare == 0 disagrees with equals")
    _need((c <= 0) == _le(S, a, b), "compare disagrees with <=")


# ---------------------------------------------------------------------------
# membership and insertion


@register(BOTH, "mem-1", 1, "verified")
def _mem_1(S, ts, os, scripts):
    """every element of the denotation is a member"""
    (a,) = ts
    for x in os[0]:
        _need(S.member(x, a), "element %d is not a member", x)


@register(BOTH, "mem-2", 1, "verified")
def _mem_2(S, ts, os, scripts):
    """every member belongs to the denotation"""
    (a,) = ts
    for x in _probes(scripts, os):
        if S.member(x, a):
            _need(oracle.o_member(x, os[0]), "%d is a member but not an element", x)
        _need(S.not_member(x, a) != S.member(x, a), "notMember %d is not the negation of member", x)


@register(BOTH, "insert-sem", 1, "verified")
def _insert_sem(S, ts, os, scripts):
    """member i (insert x s) == (i == x or member i s), pointwise"""
    (a,) = ts
    probes = _probes(scripts, os)
    for x in probes[:: max(1, len(probes) // 8)]:
        t = _valid(S, S.insert(x, a), "insert %d s" % x)
        for i in probes:
            expect = i == x or S.member(i, a)
            _need(S.member(i, t) == expect, "member %d (insert %d s) is %r", i, x, not expect)


@register(BOTH, "insert-size", 1, "verified")
def _insert_size(S, ts, os, scripts):
    """size (insert x s) == size s + (0 if member x s else 1)"""
    (a,) = ts
    for x in _probes(scripts, os):
        t = S.insert(x, a)
        expect = S.size(a) + (0 if S.member(x, a) else 1)
        _need(S.size(t) == expect, "size (insert %d s) is %d, expected %d", x, S.size(t), expect)


@register(BOTH, "delete-sem", 1, "suite")
def _delete_sem(S, ts, os, scripts):
    (a,) = ts
    for x in _probes(scripts, os)[:24]:
        _same(S, S.delete(x, a), oracle.o_delete(x, os[0]), "delete %d s" % x)


@register(BOTH, "sharing", 1, "suite")
def _sharing(S, ts, os, scripts):
    """inserting a member or deleting a non-member returns the same tree"""
    (a,) = ts
    for x in os[0][:16]:
        _need(S.insert(x, a) is a, "insert of member %d rebuilt the tree", x)
    for x in _probes(scripts, os)[:32]:
        if not oracle.o_member(x, os[0]):
            _need(S.delete(x, a) is a, "delete of non-member %d rebuilt the tree", x)


# ---------------------------------------------------------------------------
# folds and conversions


@register(BOTH, "toasclist-foldr", 1, "verified")
def _toasclist_foldr(S, ts, os, scripts):
    """toAscList s == foldr (:) [] s"""
    (a,) = ts
    via_fold = S.foldr(lambda x, acc: [x] + acc, [], a)
    _need(S.to_asc_list(a) == via_fold, "toAscList differs from foldr (:) []")
    _need(S.to_list(a) == S.elems(a) == via_fold, "toList/elems differ from toAscList")


@register(BOTH, "fold-vs-list", 1, "verified")
def _fold_vs_list(S, ts, os, scripts):
    """foldr/foldl agree with the list folds over toAscList"""
    (a,) = ts
    xs = list(os[0])
    # non-commutative, non-associative combining functions expose order bugs
    fr = S.foldr(lambda x, acc: (x * 31 + acc * 7 + 1) % 1000003, 5, a)
    want = 5
    for x in reversed(xs):
        want = (x * 31 + want * 7 + 1) % 1000003
    _need(fr == want, "foldr gives %r, list foldr %r", fr, want)
    fl = S.foldl(lambda acc, x: (acc * 17 - x * 3 + 2) % 1000003, 9, a)
    want = 9
    for x in xs:
        want = (want * 17 - x * 3 + 2) % 1000003
    _need(fl == want, "foldl gives %r, list foldl %r", fl, want)
    _need(S.to_desc_list(a) == xs[::-1], "toDescList is not the reversed element list")
    _need(S.size(a) == len(xs), "size %d, %d elements", S.size(a), len(xs))


@register(BOTH, "filter-partition", 1, "suite")
def _filter_partition(S, ts, os, scripts):
    (a,) = ts

    def pred(x):
        return x % 3 == 1

    yes, no = S.partition(pred, a)
    _same(S, yes, oracle.o_filter(pred, os[0]), "partition (yes)")
    _same(S, no, oracle.o_filter(lambda x: not pred(x), os[0]), "partition (no)")
    _same(S, S.filter(pred, a), oracle.o_filter(pred, os[0]), "filter")


@register(BOTH, "split-oracle", 1, "suite")
def _split_oracle(S, ts, os, scripts):
    (a,) = ts
    for x in _probes(scripts, os)[:24]:
        lt, found, gt = S.split_member(x, a)
        olt, ofound, ogt = oracle.o_split(x, os[0])
        _same(S, lt, olt, "split %d (lower)" % x)
        _same(S, gt, ogt, "split %d (upper)" % x)
        _need(found == ofound, "splitMember %d found=%r", x, found)
        lt2, gt2 = S.split(x, a)
        _need(S.equals(lt, lt2) and S.equals(gt, gt2), "split and splitMember disagree at %d", x)


@register(BOTH, "wf-after-ops", 1, "verified", max_ops=200)
def _wf_after_ops(S, ts, os, scripts):
    """every intermediate tree of a long script is well-formed

    The checking happens while the script is built; nothing is left to do.
    """


# ---------------------------------------------------------------------------
# structure specific


@register(("pt",), "uniqueness", 1, "verified")
def _pt_uniqueness(S, ts, os, scripts):
    """equal key sets have structurally identical trees"""
    (a,) = ts
    xs = list(os[0])
    rng = random.Random(len(xs) * 7919 + (xs[0] if xs else 0))
    shuffled = xs[:]
    rng.shuffle(shuffled)
    for order in (xs, xs[::-1], shuffled):
        t = S.from_list(order)
        _need(t == a, "insertion order %r gives a different tree", order)
    half = len(xs) // 2
    u = S.union(S.from_list(xs[:half]), S.from_list(xs[half:]))
    _need(u == a, "union of halves differs structurally")


@register(("pt",), "map-keys", 1, "suite")
def _pt_map_keys(S, ts, os, scripts):
    (a,) = ts

    def f(k):
        return (k * 5 + 3) & WORD_MASK

    _same(S, S.map_keys(f, a), oracle.o_from_iter(f(k) for k in os[0]), "map")


@register(("wb",), "balance-audit", 1, "verified", max_ops=120)
def _wb_balance_audit(S, ts, os, scripts):
    """the rebalancing precondition holds on every call, including link"""
    from setforge.harness.audit import audited

    (a,) = ts
    with audited() as calls:
        run_script(scripts[0], S)
        keys = list(os[0])
        if len(keys) >= 2:
            mid = keys[len(keys) // 2]
            lt, gt = S.split(mid, a)
            # skewed links exercise the weaker precondition
            S.link(mid, lt, S.union(gt, S.from_distinct_asc_list([k + (1 << 65) for k in range(len(keys) * 3)])))
    for side, heavy, light in calls.violations:
        raise PropertyFailed("balance%s precondition violated at heavy=%d light=%d" % (side, heavy, light))


@register(("wb",), "union-fast-path", 2, "verified")
def _wb_union_fast_path(S, ts, os, scripts):
    """the size-one shortcut in union agrees with the generic algorithm"""
    a, b = ts
    for x in list(os[1][:4]) + [0, WORD_MASK]:
        s = S.singleton(x)
        for l, r in ((a, s), (s, a)):
            fast = _valid(S, S.union(l, r), "union (fast)")
            slow = _valid(S, S.union_generic(l, r), "union (generic)")
            _need(S.equals(fast, slow), "fast and generic union disagree on singleton %d", x)
    _need(S.equals(S.union(a, b), S.union_generic(a, b)), "fast and generic union disagree")


@register(("wb",), "from-list-family", 1, "suite")
def _wb_from_list_family(S, ts, os, scripts):
    """every list constructor agrees with fromList on valid input"""
    xs = list(os[0])
    dup = sorted(xs + xs[::3])
    for name, t in (
        ("fromList", S.from_list(xs[::-1])),
        ("fromAscList", S.from_asc_list(dup)),
        ("fromDescList", S.from_desc_list(dup[::-1])),
        ("fromDistinctAscList", S.from_distinct_asc_list(xs)),
        ("fromDistinctDescList", S.from_distinct_desc_list(xs[::-1])),
    ):
        _same(S, t, os[0], name)


@register(("wb",), "take-drop", 1, "suite")
def _wb_take_drop(S, ts, os, scripts):
    (a,) = ts
    xs = os[0]
    for n in sorted({-1, 0, 1, len(xs) // 2, len(xs) - 1, len(xs), len(xs) + 1}):
        k = max(n, 0)
        _same(S, S.take(n, a), xs[:k], "take %d" % n)
        _same(S, S.drop(n, a), xs[k:], "drop %d" % n)
        lo, hi = S.split_at(n, a)
        _same(S, lo, xs[:k], "fst (splitAt %d)" % n)
        _same(S, hi, xs[k:], "snd (splitAt %d)" % n)


@register(("wb",), "min-max", 1, "suite")
def _wb_min_max(S, ts, os, scripts):
    (a,) = ts
    xs = os[0]
    if not xs:
        _need(S.lookup_min(a) is None and S.lookup_max(a) is None, "empty set has a minimum")
        _need(S.min_view(a) is None and S.max_view(a) is None, "empty set has a view")
        return
    _need(S.lookup_min(a) == xs[0] and S.lookup_max(a) == xs[-1], "wrong extremes")
    x, rest = S.min_view(a)
    _need(x == xs[0], "minView gives %r", x)
    _same(S, rest, xs[1:], "minView rest")
    x, rest = S.max_view(a)
    _need(x == xs[-1], "maxView gives %r", x)
    _same(S, rest, xs[:-1], "maxView rest")
    _same(S, S.delete_min(a), xs[1:], "deleteMin")
    _same(S, S.delete_max(a), xs[:-1], "deleteMax")


@register(("wb",), "map-monotonic", 1, "suite")
def _wb_map_monotonic(S, ts, os, scripts):
    (a,) = ts
    _same(S, S.map_monotonic(lambda x: 2 * x + 1, a), tuple(2 * x + 1 for x in os[0]), "mapMonotonic")


# ---------------------------------------------------------------------------
# running and shrinking


def _generate(prop, case_seed, max_ops, exact_ops=False):
    rng = random.Random(case_seed)
    scripts = []
    for _ in range(prop.arity):
        n = rng.randint(0, max_ops)
        if exact_ops:
            n = max_ops
        scripts.append(generate_script(rng.getrandbits(64), n))
    # share a key width across arguments now and then so sets overlap
    if prop.arity > 1 and rng.random() < 0.5:
        width = rng.choice((4, 6, 8, 12))
        scripts = [generate_script(s.seed, len(s.ops), width) for s in scripts]
    return scripts


def evaluate(prop, scripts):
    """Run one case; returns ``None`` on success or ``(message, report)``."""
    S = STRUCTURES[prop.structure]
    try:
        built = [run_script(s, S) for s in scripts]
        ts = [t for t, _ in built]
        os = [o for _, o in built]
        prop.check(S, ts, os, scripts)
    except (PropertyFailed, ScriptFailure) as e:
        return str(e), e.report
    except Exception as e:  # a crash, a broken precondition: still a failure
        return "%s: %s" % (type(e).__name__, e), None
    return None


def _candidates(scripts):
    """Single-step simplifications: drop an op, drop a list key, halve a key."""
    for i, s in enumerate(scripts):
        for j in range(len(s.ops)):
            yield _replace(scripts, i, s.ops[:j] + s.ops[j + 1:])
    for i, s in enumerate(scripts):
        for j, op in enumerate(s.ops):
            if op.kind in LIST_OPS:
                for m in range(len(op.arg)):
                    new = Op(op.kind, op.arg[:m] + op.arg[m + 1:])
                    yield _replace(scripts, i, s.ops[:j] + (new,) + s.ops[j + 1:])
    for i, s in enumerate(scripts):
        for j, op in enumerate(s.ops):
            if op.kind in KEY_OPS and op.arg > 0:
                new = Op(op.kind, op.arg // 2)
                yield _replace(scripts, i, s.ops[:j] + (new,) + s.ops[j + 1:])
            elif op.kind in LIST_OPS:
                for m, k in enumerate(op.arg):
                    if k > 0:
                        new = Op(op.kind, op.arg[:m] + (k // 2,) + op.arg[m + 1:])
                        yield _replace(scripts, i, s.ops[:j] + (new,) + s.ops[j + 1:])


def _replace(scripts, i, ops):
    out = list(scripts)
    out[i] = OpScript(scripts[i].seed, ops)
    return out


def shrink(prop, scripts, failure, budget=20000):
    """Greedy shrinking until no single simplification still fails."""
    steps = 0
    progress = True
    while progress and budget > 0:
        progress = False
        for cand in _candidates(scripts):
            budget -= 1
            if budget <= 0:
                break
            result = evaluate(prop, cand)
            if result is not None:
                scripts, failure = cand, result
                steps += 1
                progress = True
                break
    return scripts, failure, steps


def run_property(pid, cases, seed, max_ops=None, exact_ops=False):
    """Run property ``pid`` on ``cases`` generated inputs.

    Scripts get up to ``max_ops`` operations (the property's own default when
    omitted), or exactly that many with ``exact_ops``.  Deterministic in
    ``seed``.  The first failing case is shrunk and
    returned as a replayable counterexample.
    """
    try:
        prop = REGISTRY[pid]
    except KeyError:
        raise KeyError("unknown property id %r" % (pid,)) from None
    if max_ops is None:
        max_ops = prop.max_ops
    rng = random.Random(seed)
    for case in range(cases):
        scripts = _generate(prop, rng.getrandbits(64), max_ops, exact_ops)
        failure = evaluate(prop, scripts)
        if failure is not None:
            scripts, failure, steps = shrink(prop, scripts, failure)
            message, report = failure
            return PropertyResult(pid, case + 1, "fail", scripts, message, report, steps)
    return PropertyResult(pid, cases, "pass")


def replay(pid, scripts):
    """Re-run a (possibly hand-edited) counterexample."""
    prop = REGISTRY[pid]
    failure = evaluate(prop, scripts)
    if failure is None:
        return PropertyResult(pid, 1, "pass")
    return PropertyResult(pid, 1, "fail", list(scripts), failure[0], failure[1])


@dataclass
class _Collector:
    results: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def add(self, result):
        with self.lock:
            self.results[result.property_id] = result


def run_properties(ids, cases, seed, workers=1, max_ops=None):
    """Run several properties, each from its own seed derived from ``seed``.

    With ``workers > 1`` properties run on a thread pool; results do not
    depend on the worker count.
    """
    ids = list(ids)
    seeds = {pid: (seed * 1000003 + i) & WORD_MASK for i, pid in enumerate(ids)}
    out = _Collector()

    def job(pid):
        out.add(run_property(pid, cases, seeds[pid], max_ops))

    if workers <= 1:
        for pid in ids:
            job(pid)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(job, ids))
    return [out.results[pid] for pid in ids]
