"""Deliberately broken operations, for checking that the harness has teeth.

Each fault replaces one module-level function with a sabotaged copy for the
duration of a ``with inject(name):`` block.  Callers that look functions up
through the module (as the harness does) see the broken version, and so do
the remaining functions of the same module, which call it through their
module globals.
"""

from contextlib import contextmanager

from setforge import patricia, wbtree
from setforge.bitops import shorter, zero
from setforge.patricia import Bin, Tip, _insert_bm, _tip, link


def _union_without_nomatch(t1, t2):
    # the prefix-compatibility test is skipped when one mask is shorter, so
    # a tree with a foreign prefix is pushed into a subtree it does not fit
    if type(t1) is Bin:
        if type(t2) is Bin:
            p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
            if shorter(m1, m2):
                if zero(p2, m1):
                    return Bin(p1, m1, _union_without_nomatch(t1.left, t2), t1.right)
                return Bin(p1, m1, t1.left, _union_without_nomatch(t1.right, t2))
            if shorter(m2, m1):
                if zero(p1, m2):
                    return Bin(p2, m2, _union_without_nomatch(t1, t2.left), t2.right)
                return Bin(p2, m2, t2.left, _union_without_nomatch(t1, t2.right))
            if p1 == p2:
                return Bin(
                    p1, m1, _union_without_nomatch(t1.left, t2.left), _union_without_nomatch(t1.right, t2.right)
                )
            return link(p1, t1, p2, t2)
        if type(t2) is Tip:
            return _insert_bm(t2.prefix, t2.bitmap, t1)
        return t1
    if type(t1) is Tip:
        return _insert_bm(t1.prefix, t1.bitmap, t2)
    return t2


def _intersect_tip_with_or(kx, bm, t):
    while type(t) is Bin:
        if patricia.nomatch(kx, t.prefix, t.mask):
            return None
        t = t.left if zero(kx, t.mask) else t.right
    if type(t) is Tip and t.prefix == kx:
        return _tip(kx, t.bitmap | bm)
    return None


def _insert_without_rebalance(x, t):
    if t is None:
        return wbtree.Bin(1, x, None, None)
    y = t.elem
    if x < y:
        l = _insert_without_rebalance(x, t.left)
        if l is t.left:
            return t
        return wbtree.Bin(t.size + 1, y, l, t.right)
    if y < x:
        r = _insert_without_rebalance(x, t.right)
        if r is t.right:
            return t
        return wbtree.Bin(t.size + 1, y, t.left, r)
    return t


FAULTS = {
    "pt-union-nomatch": (patricia, "union", _union_without_nomatch),
    "wb-insert-no-rebalance": (wbtree, "insert", _insert_without_rebalance),
    "pt-intersection-bitmap-or": (patricia, "_intersect_tip", _intersect_tip_with_or),
}

DESCRIPTIONS = {
    "pt-union-nomatch": "Patricia union skips the nomatch test when one mask is shorter",
    "wb-insert-no-rebalance": "weight-balanced insert rebuilds the path without rebalancing",
    "pt-intersection-bitmap-or": "Patricia intersection combines tip bitmaps with OR instead of AND",
}


@contextmanager
def inject(name):
    """Swap in the named fault; the original is restored on exit."""
    try:
        module, attr, broken = FAULTS[name]
    except KeyError:
        raise KeyError("unknown fault %r" % (name,)) from None
    original = getattr(module, attr)
    setattr(module, attr, broken)
    try:
        yield
    finally:
        setattr(module, attr, original)
