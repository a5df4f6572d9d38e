"""Exhaustive differential check over every subset of a small universe."""

from setforge import oracle
from setforge.harness.properties import PropertyResult
from setforge.harness.scripts import PT, STRUCTURES, Op, OpScript

MAX_BITS = 8
SPREAD = 97


class Mismatch(AssertionError):
    def __init__(self, message, inputs, report=None):
        super().__init__(message)
        self.inputs = inputs
        self.report = report


def _as_scripts(*sets):
    return [OpScript(0, (Op("fromlist", tuple(s)),)) for s in sets]


def _check_result(S, t, expect, what, inputs):
    report = S.check(t)
    if not report.ok:
        raise Mismatch("%s %s is ill-formed:\n%s" % (S.name, what, report), inputs, report)
    got = S.to_asc_list(t)
    if tuple(got) != expect:
        raise Mismatch("%s %s gives %r, oracle %r" % (S.name, what, got, list(expect)), inputs)


def _check_structure(S, subsets):
    n_checks = 0
    trees = []
    for s in subsets:
        t = S.from_list(s)
        _check_result(S, t, s, "fromList %r" % (list(s),), (s,))
        if S is PT:
            other = S.from_list(reversed(s))
            if other != t:
                raise Mismatch("pt insertion orders of %r give different trees" % (list(s),), (s,))
        trees.append(t)
    n_checks += len(subsets)

    union, inter, diff = S.union, S.intersection, S.difference
    subset, equals = S.is_subset_of, S.equals
    o_union, o_inter, o_diff = oracle.o_union, oracle.o_intersection, oracle.o_difference
    structural = S is PT
    for i, (s1, t1) in enumerate(zip(subsets, trees)):
        for j, (s2, t2) in enumerate(zip(subsets, trees)):
            pair = (s1, s2)
            _check_result(S, union(t1, t2), o_union(s1, s2), "union %r %r" % pair, pair)
            _check_result(S, inter(t1, t2), o_inter(s1, s2), "intersection %r %r" % pair, pair)
            _check_result(S, diff(t1, t2), o_diff(s1, s2), "difference %r %r" % pair, pair)
            want = oracle.o_subset(s1, s2)
            if subset(t1, t2) != want:
                raise Mismatch("%s isSubsetOf %r %r is not %r" % (S.name, s1, s2, want), pair)
            want = i == j
            if equals(t1, t2) != want or (structural and (t1 == t2) != want):
                raise Mismatch("%s equals %r %r is not %r" % (S.name, s1, s2, want), pair)
            n_checks += 5
    return n_checks, trees


def _check_splits(S, subsets, trees, keys):
    n_checks = 0
    for s, t in zip(subsets, trees):
        for k in keys:
            lt, found, gt = S.split_member(k, t)
            olt, ofound, ogt = oracle.o_split(k, s)
            _check_result(S, lt, olt, "split %d %r (lower)" % (k, s), (s,))
            _check_result(S, gt, ogt, "split %d %r (upper)" % (k, s), (s,))
            if found != ofound:
                raise Mismatch("%s splitMember %d %r found=%r" % (S.name, k, s, found), (s,))
            n_checks += 1
    return n_checks


def run_exhaustive(bits, structures=("wb", "pt")):
    """Check both structures on every subset of ``{0, ..., bits - 1}``.

    That is ``2**bits`` subsets and ``4**bits`` ordered pairs.

    Pairs are checked for union, intersection, difference, isSubsetOf and
    equality; every subset is split at every key, between keys and just
    outside the universe.  Patricia trees are also built in two insertion
    orders and must come out structurally identical.

    Keys ``0..7`` all land in one Patricia bitmap tip, so Patricia gets a
    second pass with every key multiplied by ``SPREAD``; the scaling is
    monotone, so the oracle is unaffected, and the trees now have Bins.
    """
    if not 0 <= bits <= MAX_BITS:
        raise ValueError("universe size must be between 0 and %d, got %r" % (MAX_BITS, bits))
    base = oracle.enumerate_universe(bits)
    pid = "exhaustive-%d" % bits
    total = 0
    passes = [(name, 1) for name in structures]
    if "pt" in structures:
        passes.append(("pt", SPREAD))
    for name, stride in passes:
        S = STRUCTURES[name]
        subsets = [tuple(x * stride for x in s) for s in base]
        keys = sorted({x * stride + d for x in range(bits + 1) for d in (0, 1)})
        try:
            n, trees = _check_structure(S, subsets)
            total += n
            total += _check_splits(S, subsets, trees, keys)
        except Mismatch as e:
            return PropertyResult(pid, total, "fail", _as_scripts(*e.inputs), str(e), e.report)
    return PropertyResult(pid, total, "pass")
