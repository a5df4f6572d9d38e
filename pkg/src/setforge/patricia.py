"""Persistent big-endian Patricia trees over unsigned 64-bit keys.

A set is ``None`` (``Nil``, the empty set), a :class:`Tip` holding a
64-aligned prefix and a nonzero 64-bit membership bitmap, or a :class:`Bin`
that splits its keys on a single mask bit.  ``Nil`` never occurs below a
``Bin``; the private smart constructors ``_bin`` and ``_tip`` collapse empty
children.

Each key set has exactly one well-formed tree, so node ``==`` compares
structure and coincides with set equality.
"""

from dataclasses import dataclass

from setforge import bitops
from setforge.bitops import (
    PREFIX_BIT_MASK,
    SUFFIX_BIT_MASK,
    WORD_BITS,
    WORD_MASK,
    branch_mask,
    clear_bits,
    index_of_only_bit,
    lowest_bit_mask,
    mask,
    nomatch,
    rev_word,
    shorter,
    zero,
)

TIP_BITS = 6


class Bin:
    __slots__ = ("prefix", "mask", "left", "right")

    def __init__(self, prefix, mask, left, right):
        self.prefix = prefix
        self.mask = mask
        self.left = left
        self.right = right

    def __eq__(self, other):
        return (
            type(other) is Bin
            and self.mask == other.mask
            and self.prefix == other.prefix
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = None

    def __repr__(self):
        return "Bin(%d, %d, %r, %r)" % (self.prefix, self.mask, self.left, self.right)


class Tip:
    __slots__ = ("prefix", "bitmap")

    def __init__(self, prefix, bitmap):
        self.prefix = prefix
        self.bitmap = bitmap

    def __eq__(self, other):
        return type(other) is Tip and self.prefix == other.prefix and self.bitmap == other.bitmap

    __hash__ = None

    def __repr__(self):
        return "Tip(%d, %#x)" % (self.prefix, self.bitmap)


Nil = None


@dataclass(frozen=True)
class DyadicRange:
    """The key interval ``[p * 2**b, (p + 1) * 2**b - 1]``."""

    p: int
    b: int

    @property
    def lo(self):
        return self.p << self.b

    @property
    def hi(self):
        return ((self.p + 1) << self.b) - 1

    def __contains__(self, k):
        return k >> self.b == self.p

    def issubset(self, other):
        return self.b <= other.b and self.p >> (other.b - self.b) == other.p

    def halves(self):
        assert self.b > 0, "a range of height 0 has no halves"
        return DyadicRange(2 * self.p, self.b - 1), DyadicRange(2 * self.p + 1, self.b - 1)

    def join(self, other):
        """Least dyadic range containing both."""
        b = max(self.b, other.b)
        p1 = self.p >> (b - self.b)
        p2 = other.p >> (b - other.b)
        while p1 != p2:
            p1 >>= 1
            p2 >>= 1
            b += 1
        return DyadicRange(p1, b)


def _bin(p, m, l, r):
    if r is None:
        return l
    if l is None:
        return r
    return Bin(p, m, l, r)


def _tip(p, bm):
    return None if bm == 0 else Tip(p, bm)


def link(p1, t1, p2, t2):
    """Join two non-empty trees whose key ranges are disjoint.

    ``p1`` and ``p2`` are any keys (or prefixes) from ``t1`` and ``t2``.
    """
    m = branch_mask(p1, p2)
    p = mask(p1, m)
    if zero(p1, m):
        return Bin(p, m, t1, t2)
    return Bin(p, m, t2, t1)


# ---------------------------------------------------------------------------
# queries


def null(t):
    return t is None


def size(t):
    if t is None:
        return 0
    if type(t) is Tip:
        return t.bitmap.bit_count()
    return size(t.left) + size(t.right)


def member(x, t):
    while type(t) is Bin:
        if nomatch(x, t.prefix, t.mask):
            return False
        t = t.left if zero(x, t.mask) else t.right
    if t is None:
        return False
    return x & PREFIX_BIT_MASK == t.prefix and (1 << (x & SUFFIX_BIT_MASK)) & t.bitmap != 0


def not_member(x, t):
    return not member(x, t)


# ---------------------------------------------------------------------------
# construction


def _check_key(x):
    if not bitops.is_word(x):
        raise ValueError("key %r is not an unsigned 64-bit integer" % (x,))


def singleton(x):
    _check_key(x)
    return Tip(x & PREFIX_BIT_MASK, 1 << (x & SUFFIX_BIT_MASK))


def insert(x, t):
    """Insert ``x``; returns ``t`` itself when ``x`` is already present."""
    _check_key(x)
    return _insert_bm(x & PREFIX_BIT_MASK, 1 << (x & SUFFIX_BIT_MASK), t)


def _insert_bm(kx, bm, t):
    if type(t) is Bin:
        p = t.prefix
        m = t.mask
        if nomatch(kx, p, m):
            return link(kx, Tip(kx, bm), p, t)
        if zero(kx, m):
            l = _insert_bm(kx, bm, t.left)
            return t if l is t.left else Bin(p, m, l, t.right)
        r = _insert_bm(kx, bm, t.right)
        return t if r is t.right else Bin(p, m, t.left, r)
    if type(t) is Tip:
        if t.prefix == kx:
            merged = t.bitmap | bm
            return t if merged == t.bitmap else Tip(kx, merged)
        return link(kx, Tip(kx, bm), t.prefix, t)
    return Tip(kx, bm)


def delete(x, t):
    """Remove ``x``; returns ``t`` itself when ``x`` is absent."""
    if not bitops.is_word(x):
        return t
    return _delete_bm(x & PREFIX_BIT_MASK, 1 << (x & SUFFIX_BIT_MASK), t)


def _delete_bm(kx, bm, t):
    if type(t) is Bin:
        p = t.prefix
        m = t.mask
        if nomatch(kx, p, m):
            return t
        if zero(kx, m):
            l = _delete_bm(kx, bm, t.left)
            return t if l is t.left else _bin(p, m, l, t.right)
        r = _delete_bm(kx, bm, t.right)
        return t if r is t.right else _bin(p, m, t.left, r)
    if type(t) is Tip:
        if t.prefix == kx:
            kept = clear_bits(t.bitmap, bm)
            return t if kept == t.bitmap else _tip(kx, kept)
        return t
    return None


def from_list(xs):
    t = None
    for x in xs:
        t = insert(x, t)
    return t


# ---------------------------------------------------------------------------
# set algebra


def union(t1, t2):
    if type(t1) is Bin:
        if type(t2) is Bin:
            p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
            if shorter(m1, m2):
                if nomatch(p2, p1, m1):
                    return link(p1, t1, p2, t2)
                if zero(p2, m1):
                    return Bin(p1, m1, union(t1.left, t2), t1.right)
                return Bin(p1, m1, t1.left, union(t1.right, t2))
            if shorter(m2, m1):
                if nomatch(p1, p2, m2):
                    return link(p1, t1, p2, t2)
                if zero(p1, m2):
                    return Bin(p2, m2, union(t1, t2.left), t2.right)
                return Bin(p2, m2, t2.left, union(t1, t2.right))
            if p1 == p2:
                return Bin(p1, m1, union(t1.left, t2.left), union(t1.right, t2.right))
            return link(p1, t1, p2, t2)
        if type(t2) is Tip:
            return _insert_bm(t2.prefix, t2.bitmap, t1)
        return t1
    if type(t1) is Tip:
        return _insert_bm(t1.prefix, t1.bitmap, t2)
    return t2


def unions(ts):
    acc = None
    for t in ts:
        acc = union(acc, t)
    return acc


def intersection(t1, t2):
    if type(t1) is Bin:
        if type(t2) is Bin:
            p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
            if shorter(m1, m2):
                if nomatch(p2, p1, m1):
                    return None
                if zero(p2, m1):
                    return intersection(t1.left, t2)
                return intersection(t1.right, t2)
            if shorter(m2, m1):
                if nomatch(p1, p2, m2):
                    return None
                if zero(p1, m2):
                    return intersection(t1, t2.left)
                return intersection(t1, t2.right)
            if p1 == p2:
                return _bin(p1, m1, intersection(t1.left, t2.left), intersection(t1.right, t2.right))
            return None
        if type(t2) is Tip:
            return _intersect_tip(t2.prefix, t2.bitmap, t1)
        return None
    if type(t1) is Tip:
        return _intersect_tip(t1.prefix, t1.bitmap, t2)
    return None


def _intersect_tip(kx, bm, t):
    while type(t) is Bin:
        if nomatch(kx, t.prefix, t.mask):
            return None
        t = t.left if zero(kx, t.mask) else t.right
    if type(t) is Tip and t.prefix == kx:
        return _tip(kx, t.bitmap & bm)
    return None


def difference(t1, t2):
    if type(t1) is Bin:
        if type(t2) is Bin:
            p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
            if shorter(m1, m2):
                if nomatch(p2, p1, m1):
                    return t1
                if zero(p2, m1):
                    return _bin(p1, m1, difference(t1.left, t2), t1.right)
                return _bin(p1, m1, t1.left, difference(t1.right, t2))
            if shorter(m2, m1):
                if nomatch(p1, p2, m2):
                    return t1
                if zero(p1, m2):
                    return difference(t1, t2.left)
                return difference(t1, t2.right)
            if p1 == p2:
                return _bin(p1, m1, difference(t1.left, t2.left), difference(t1.right, t2.right))
            return t1
        if type(t2) is Tip:
            return _delete_bm(t2.prefix, t2.bitmap, t1)
        return t1
    if type(t1) is Tip:
        kx = t1.prefix
        t = t2
        while type(t) is Bin:
            if nomatch(kx, t.prefix, t.mask):
                return t1
            t = t.left if zero(kx, t.mask) else t.right
        if type(t) is Tip and t.prefix == kx:
            return _tip(kx, clear_bits(t1.bitmap, t.bitmap))
        return t1
    return None


def disjoint(t1, t2):
    if type(t1) is Bin:
        if type(t2) is Bin:
            p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
            if shorter(m1, m2):
                if nomatch(p2, p1, m1):
                    return True
                return disjoint(t1.left if zero(p2, m1) else t1.right, t2)
            if shorter(m2, m1):
                if nomatch(p1, p2, m2):
                    return True
                return disjoint(t1, t2.left if zero(p1, m2) else t2.right)
            if p1 == p2:
                return disjoint(t1.left, t2.left) and disjoint(t1.right, t2.right)
            return True
        if type(t2) is Tip:
            return _intersect_tip(t2.prefix, t2.bitmap, t1) is None
        return True
    if type(t1) is Tip:
        return _intersect_tip(t1.prefix, t1.bitmap, t2) is None
    return True


# subset_cmp results
LT, EQ, GT = -1, 0, 1


def subset_cmp(t1, t2):
    """``LT`` for a proper subset, ``EQ`` for equal sets, ``GT`` otherwise."""
    if type(t1) is Bin:
        if type(t2) is not Bin:
            return GT
        p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
        if shorter(m1, m2):
            return GT
        if shorter(m2, m1):
            if nomatch(p1, p2, m2):
                return GT
            c = subset_cmp(t1, t2.left if zero(p1, m2) else t2.right)
            return GT if c == GT else LT
        if p1 != p2:
            return GT
        cl = subset_cmp(t1.left, t2.left)
        if cl == GT:
            return GT
        cr = subset_cmp(t1.right, t2.right)
        if cr == GT:
            return GT
        return EQ if cl == EQ and cr == EQ else LT
    if type(t1) is Tip:
        if type(t2) is Tip:
            if t1.prefix != t2.prefix:
                return GT
            if t1.bitmap == t2.bitmap:
                return EQ
            return LT if clear_bits(t1.bitmap, t2.bitmap) == 0 else GT
        if type(t2) is Bin:
            kx = t1.prefix
            if nomatch(kx, t2.prefix, t2.mask):
                return GT
            c = subset_cmp(t1, t2.left if zero(kx, t2.mask) else t2.right)
            return GT if c == GT else LT
        return GT
    return EQ if t2 is None else LT


def is_subset_of(t1, t2):
    if type(t1) is Bin:
        if type(t2) is not Bin:
            return False
        p1, m1, p2, m2 = t1.prefix, t1.mask, t2.prefix, t2.mask
        if shorter(m1, m2):
            return False
        if shorter(m2, m1):
            if nomatch(p1, p2, m2):
                return False
            return is_subset_of(t1, t2.left if zero(p1, m2) else t2.right)
        return p1 == p2 and is_subset_of(t1.left, t2.left) and is_subset_of(t1.right, t2.right)
    if type(t1) is Tip:
        kx = t1.prefix
        t = t2
        while type(t) is Bin:
            if nomatch(kx, t.prefix, t.mask):
                return False
            t = t.left if zero(kx, t.mask) else t.right
        return type(t) is Tip and t.prefix == kx and clear_bits(t1.bitmap, t.bitmap) == 0
    return True


def is_proper_subset_of(t1, t2):
    return subset_cmp(t1, t2) == LT


def equals(t1, t2):
    """Set equality, decided structurally."""
    return t1 == t2


def compare_sets(t1, t2):
    """Lexicographic comparison of the ascending key lists: -1, 0 or 1."""
    a = to_asc_list(t1)
    b = to_asc_list(t2)
    return (a > b) - (a < b)


# ---------------------------------------------------------------------------
# bitmap iteration


def foldl_bits(prefix, f, z, bitmap):
    """Left fold over the keys of one tip, lowest bit first."""
    acc = z
    while bitmap:
        bit = lowest_bit_mask(bitmap)
        acc = f(acc, prefix + index_of_only_bit(bit))
        bitmap ^= bit
    return acc


def foldr_bits(prefix, f, z, bitmap):
    """Right fold over the keys of one tip.

    Walks the reversed bitmap lowest bit first, which visits the original
    bits from the top down.
    """
    acc = z
    top = prefix + WORD_BITS - 1
    bm = rev_word(bitmap)
    while bm:
        bit = lowest_bit_mask(bm)
        acc = f(top - index_of_only_bit(bit), acc)
        bm ^= bit
    return acc


def foldr(f, z, t):
    """``f(k1, f(k2, ... f(kn, z)))`` over the ascending keys."""
    if type(t) is Bin:
        return foldr(f, foldr(f, z, t.right), t.left)
    if type(t) is Tip:
        return foldr_bits(t.prefix, f, z, t.bitmap)
    return z


def foldl(f, z, t):
    """``f(... f(f(z, k1), k2) ..., kn)`` over the ascending keys."""
    if type(t) is Bin:
        return foldl(f, foldl(f, z, t.left), t.right)
    if type(t) is Tip:
        return foldl_bits(t.prefix, f, z, t.bitmap)
    return z


def _tips(t):
    stack = [t]
    while stack:
        t = stack.pop()
        if type(t) is Bin:
            stack.append(t.right)
            stack.append(t.left)
        elif t is not None:
            yield t


def _iter_asc(t):
    for tip in _tips(t):
        p = tip.prefix
        bm = tip.bitmap
        while bm:
            bit = bm & -bm
            yield p + bit.bit_length() - 1
            bm ^= bit


def to_asc_list(t):
    out = []
    append = out.append
    for tip in _tips(t):
        p = tip.prefix
        bm = tip.bitmap
        while bm:
            bit = bm & -bm
            append(p + bit.bit_length() - 1)
            bm ^= bit
    return out


def _tips_desc(t):
    stack = [t]
    while stack:
        t = stack.pop()
        if type(t) is Bin:
            stack.append(t.left)
            stack.append(t.right)
        elif t is not None:
            yield t


def _iter_desc(t):
    for tip in _tips_desc(t):
        top = tip.prefix + WORD_BITS - 1
        bm = rev_word(tip.bitmap)
        while bm:
            bit = bm & -bm
            yield top - (bit.bit_length() - 1)
            bm ^= bit


def to_desc_list(t):
    return list(_iter_desc(t))


to_list = to_asc_list
elems = to_asc_list


# ---------------------------------------------------------------------------
# filtering and splitting


def filter(p, t):
    if type(t) is Bin:
        return _bin(t.prefix, t.mask, filter(p, t.left), filter(p, t.right))
    if type(t) is Tip:
        kept = foldl_bits(t.prefix, lambda bm, k: bm | (1 << (k & SUFFIX_BIT_MASK)) if p(k) else bm, 0, t.bitmap)
        return t if kept == t.bitmap else _tip(t.prefix, kept)
    return None


def partition(p, t):
    if type(t) is Bin:
        l1, l2 = partition(p, t.left)
        r1, r2 = partition(p, t.right)
        return _bin(t.prefix, t.mask, l1, r1), _bin(t.prefix, t.mask, l2, r2)
    if type(t) is Tip:
        kept = foldl_bits(t.prefix, lambda bm, k: bm | (1 << (k & SUFFIX_BIT_MASK)) if p(k) else bm, 0, t.bitmap)
        return _tip(t.prefix, kept), _tip(t.prefix, t.bitmap ^ kept)
    return None, None


def map_keys(f, t):
    """Apply an arbitrary key function; the result is rebuilt by insertion."""
    return from_list(f(k) for k in to_asc_list(t))


def split(x, t):
    """``(keys < x, keys > x)``."""
    lt, _, gt = split_member(x, t)
    return lt, gt


def split_member(x, t):
    """``(keys < x, x in t, keys > x)``."""
    if type(t) is Bin:
        p = t.prefix
        m = t.mask
        if nomatch(x, p, m):
            return (None, False, t) if x < p else (t, False, None)
        if zero(x, m):
            lt, found, gt = split_member(x, t.left)
            return lt, found, union(gt, t.right)
        lt, found, gt = split_member(x, t.right)
        return union(t.left, lt), found, gt
    if type(t) is Tip:
        kx = t.prefix
        if kx > x:
            return None, False, t
        if kx < x & PREFIX_BIT_MASK:
            return t, False, None
        bit = 1 << (x & SUFFIX_BIT_MASK)
        lower = bit - 1
        higher = WORD_MASK ^ (lower | bit)
        return _tip(kx, t.bitmap & lower), t.bitmap & bit != 0, _tip(kx, t.bitmap & higher)
    return None, False, None


# ---------------------------------------------------------------------------
# object wrapper


class PatriciaSet:
    """Immutable set facade over a Patricia tree of unsigned 64-bit keys.

    >>> s = PatriciaSet([67, 3, 1])
    >>> list(s), 67 in s, len(s - PatriciaSet([3]))
    ([1, 3, 67], True, 2)
    """

    __slots__ = ("root",)

    def __init__(self, items=()):
        self.root = from_list(items)

    @classmethod
    def from_tree(cls, root):
        s = cls.__new__(cls)
        s.root = root
        return s

    def __len__(self):
        return size(self.root)

    def __bool__(self):
        return self.root is not None

    def __iter__(self):
        return _iter_asc(self.root)

    def __reversed__(self):
        return _iter_desc(self.root)

    def __contains__(self, x):
        return member(x, self.root)

    def __repr__(self):
        return "PatriciaSet(%r)" % (to_asc_list(self.root),)

    def insert(self, x):
        return PatriciaSet.from_tree(insert(x, self.root))

    def delete(self, x):
        return PatriciaSet.from_tree(delete(x, self.root))

    def __or__(self, other):
        return PatriciaSet.from_tree(union(self.root, other.root))

    def __and__(self, other):
        return PatriciaSet.from_tree(intersection(self.root, other.root))

    def __sub__(self, other):
        return PatriciaSet.from_tree(difference(self.root, other.root))

    def isdisjoint(self, other):
        return disjoint(self.root, other.root)

    def issubset(self, other):
        return is_subset_of(self.root, other.root)

    def __eq__(self, other):
        if not isinstance(other, PatriciaSet):
            return NotImplemented
        return self.root == other.root

    def __lt__(self, other):
        return compare_sets(self.root, other.root) < 0

    def __le__(self, other):
        return compare_sets(self.root, other.root) <= 0

    def __gt__(self, other):
        return compare_sets(self.root, other.root) > 0

    def __ge__(self, other):
        return compare_sets(self.root, other.root) >= 0

    def __hash__(self):
        return hash(tuple(_iter_asc(self.root)))
