"""Persistent weight-balanced binary search trees.

A tree is either ``None`` (the empty tree, ``Tip``) or a :class:`Bin` node
caching the size of its subtree.  Every function here is pure: inputs are
never mutated, and unchanged subtrees are shared between input and output.

Elements only need ``<``.  Two elements ``a`` and ``b`` are considered equal
when neither ``a < b`` nor ``b < a``.  To use an external three-way comparison
wrap the elements with :func:`functools.cmp_to_key`.

Balance follows Adams' variant with ``DELTA = 3`` and rotation ratio 2: at
every node with subtree sizes ``s1`` and ``s2``,
``s1 + s2 <= 1 or (s1 <= 3 * s2 and s2 <= 3 * s1)``.
"""

import logging
from contextlib import contextmanager

log = logging.getLogger(__name__)

DELTA = 3
RATIO = 2


class Bin:
    __slots__ = ("size", "elem", "left", "right")

    def __init__(self, size, elem, left, right):
        self.size = size
        self.elem = elem
        self.left = left
        self.right = right

    def __repr__(self):
        return "Bin(%r, %r, %r, %r)" % (self.size, self.elem, self.left, self.right)


Tip = None


def size(t):
    return 0 if t is None else t.size


def null(t):
    return t is None


def singleton(x):
    return Bin(1, x, None, None)


def _bin(x, l, r):
    return Bin(size(l) + size(r) + 1, x, l, r)


# ---------------------------------------------------------------------------
# balance predicates


def balanced(s1, s2):
    return s1 + s2 <= 1 or (s1 <= DELTA * s2 and s2 <= DELTA * s1)


def bal_star(s1, s2):
    """Weaker precondition that makes ``link`` go through ``balance_left``."""
    return DELTA * s1 <= DELTA * DELTA * s2 + DELTA * s2 + s2 and s2 <= s1


def balance_left_pre(s1, s2):
    return (0 < s1 and bal_star(s1 - 1, s2)) or balanced(s1, s2) or balanced(s1, s2 + 1)


def historical_balance_left_pre(s1, s2):
    """The "left inserted / unchanged / right deleted" precondition.

    Too strong for ``link``; kept for the precondition audit only.
    """
    return (0 < s1 and balanced(s1 - 1, s2)) or balanced(s1, s2) or balanced(s1, s2 + 1)


def _pre_failure(name, heavy, light):
    return (
        "%s precondition violated for heavy=%d light=%d: "
        "bal*(heavy-1,light) and 0<heavy is false; bal(heavy,light) is false; "
        "bal(heavy,light+1) is false" % (name, heavy, light)
    )


_audit_hook = None


@contextmanager
def audit_balance(hook):
    """Call ``hook(side, heavy, light)`` on every rebalancing call.

    ``side`` is ``"L"`` for :func:`balance_left` and ``"R"`` for
    :func:`balance_right`; ``heavy`` is the size of the subtree that may have
    grown.  Not thread safe: the hook is module global.
    """
    global _audit_hook
    previous = _audit_hook
    _audit_hook = hook
    try:
        yield
    finally:
        _audit_hook = previous


def balance_left(x, l, r):
    """Rebuild a node whose left side may have grown or right side shrunk."""
    sl = size(l)
    sr = size(r)
    if _audit_hook is not None:
        _audit_hook("L", sl, sr)
    assert balance_left_pre(sl, sr), _pre_failure("balance_left", sl, sr)
    if sl + sr <= 1 or sl <= DELTA * sr:
        return Bin(sl + sr + 1, x, l, r)
    ll = l.left
    lr = l.right
    if size(lr) < RATIO * size(ll):
        return Bin(sl + sr + 1, l.elem, ll, Bin(size(lr) + sr + 1, x, lr, r))
    return Bin(
        sl + sr + 1,
        lr.elem,
        Bin(size(ll) + size(lr.left) + 1, l.elem, ll, lr.left),
        Bin(size(lr.right) + sr + 1, x, lr.right, r),
    )


def balance_right(x, l, r):
    """Mirror image of :func:`balance_left`."""
    sl = size(l)
    sr = size(r)
    if _audit_hook is not None:
        _audit_hook("R", sr, sl)
    assert balance_left_pre(sr, sl), _pre_failure("balance_right", sr, sl)
    if sl + sr <= 1 or sr <= DELTA * sl:
        return Bin(sl + sr + 1, x, l, r)
    rl = r.left
    rr = r.right
    if size(rl) < RATIO * size(rr):
        return Bin(sl + sr + 1, r.elem, Bin(sl + size(rl) + 1, x, l, rl), rr)
    return Bin(
        sl + sr + 1,
        rl.elem,
        Bin(sl + size(rl.left) + 1, x, l, rl.left),
        Bin(size(rl.right) + size(rr) + 1, r.elem, rl.right, rr),
    )


# ---------------------------------------------------------------------------
# queries


def member(x, t):
    while t is not None:
        y = t.elem
        if x < y:
            t = t.left
        elif y < x:
            t = t.right
        else:
            return True
    return False


def not_member(x, t):
    return not member(x, t)


def lookup_min(t):
    if t is None:
        return None
    while t.left is not None:
        t = t.left
    return t.elem


def lookup_max(t):
    if t is None:
        return None
    while t.right is not None:
        t = t.right
    return t.elem


# ---------------------------------------------------------------------------
# insertion and deletion


def insert(x, t):
    """Insert ``x``; returns ``t`` itself when ``x`` is already present."""
    if t is None:
        return Bin(1, x, None, None)
    y = t.elem
    if x < y:
        l = insert(x, t.left)
        if l is t.left:
            return t
        return balance_left(y, l, t.right)
    if y < x:
        r = insert(x, t.right)
        if r is t.right:
            return t
        return balance_right(y, t.left, r)
    return t


def insert_r(x, t):
    """Insert that keeps the element already stored on collision."""
    # insert already keeps the stored element; the name mirrors union's use.
    return insert(x, t)


def insert_min(x, t):
    if t is None:
        return Bin(1, x, None, None)
    return balance_left(t.elem, insert_min(x, t.left), t.right)


def insert_max(x, t):
    if t is None:
        return Bin(1, x, None, None)
    return balance_right(t.elem, t.left, insert_max(x, t.right))


def delete(x, t):
    """Remove ``x``; returns ``t`` itself when ``x`` is absent."""
    if t is None:
        return None
    y = t.elem
    if x < y:
        l = delete(x, t.left)
        if l is t.left:
            return t
        return balance_right(y, l, t.right)
    if y < x:
        r = delete(x, t.right)
        if r is t.right:
            return t
        return balance_left(y, t.left, r)
    return glue(t.left, t.right)


def _min_view_sure(x, l, r):
    if l is None:
        return x, r
    m, l2 = _min_view_sure(l.elem, l.left, l.right)
    return m, balance_right(x, l2, r)


def _max_view_sure(x, l, r):
    if r is None:
        return x, l
    m, r2 = _max_view_sure(r.elem, r.left, r.right)
    return m, balance_left(x, l, r2)


def min_view(t):
    """``(least element, rest)`` or ``None`` for the empty tree."""
    if t is None:
        return None
    return _min_view_sure(t.elem, t.left, t.right)


def max_view(t):
    """``(greatest element, rest)`` or ``None`` for the empty tree."""
    if t is None:
        return None
    return _max_view_sure(t.elem, t.left, t.right)


def delete_min(t):
    if t is None:
        return None
    if t.left is None:
        return t.right
    return balance_right(t.elem, delete_min(t.left), t.right)


def delete_max(t):
    if t is None:
        return None
    if t.right is None:
        return t.left
    return balance_left(t.elem, t.left, delete_max(t.right))


def glue(l, r):
    """Join two trees that are already balanced with respect to each other."""
    if l is None:
        return r
    if r is None:
        return l
    if l.size > r.size:
        m, l2 = _max_view_sure(l.elem, l.left, l.right)
        return balance_right(m, l2, r)
    m, r2 = _min_view_sure(r.elem, r.left, r.right)
    return balance_left(m, l, r2)


def merge(l, r):
    """Join two trees of arbitrary relative size, all of ``l`` below ``r``."""
    if l is None:
        return r
    if r is None:
        return l
    if DELTA * l.size < r.size:
        return balance_left(r.elem, merge(l, r.left), r.right)
    if DELTA * r.size < l.size:
        return balance_right(l.elem, l.left, merge(l.right, r))
    return glue(l, r)


def link(x, l, r):
    """Join ``l``, ``x`` and ``r`` (in that order) without any size relation."""
    if l is None:
        return insert_min(x, r)
    if r is None:
        return insert_max(x, l)
    if DELTA * l.size < r.size:
        return balance_left(r.elem, link(x, l, r.left), r.right)
    if DELTA * r.size < l.size:
        return balance_right(l.elem, l.left, link(x, l.right, r))
    return Bin(l.size + r.size + 1, x, l, r)


# ---------------------------------------------------------------------------
# splitting


def split(x, t):
    """``(elements < x, elements > x)``."""
    if t is None:
        return None, None
    y = t.elem
    if x < y:
        lt, gt = split(x, t.left)
        return lt, link(y, gt, t.right)
    if y < x:
        lt, gt = split(x, t.right)
        return link(y, t.left, lt), gt
    return t.left, t.right


def split_member(x, t):
    """``(elements < x, x in t, elements > x)``."""
    if t is None:
        return None, False, None
    y = t.elem
    if x < y:
        lt, found, gt = split_member(x, t.left)
        return lt, found, link(y, gt, t.right)
    if y < x:
        lt, found, gt = split_member(x, t.right)
        return link(y, t.left, lt), found, gt
    return t.left, True, t.right


# ---------------------------------------------------------------------------
# set algebra


def union(t1, t2):
    """Divide-and-conquer union with the size-one shortcut."""
    if t2 is None:
        return t1
    if t2.size == 1:
        return insert_r(t2.elem, t1)
    if t1 is None:
        return t2
    if t1.size == 1:
        return insert(t1.elem, t2)
    return _union_split(t1, t2, union)


def union_generic(t1, t2):
    """:func:`union` without the size-one shortcut; for comparison only."""
    if t2 is None:
        return t1
    if t1 is None:
        return t2
    return _union_split(t1, t2, union_generic)


def _union_split(t1, t2, recur):
    x = t1.elem
    l2, r2 = split(x, t2)
    l1l2 = recur(t1.left, l2)
    r1r2 = recur(t1.right, r2)
    if l1l2 is t1.left and r1r2 is t1.right:
        return t1
    return link(x, l1l2, r1r2)


def unions(ts):
    acc = None
    for t in ts:
        acc = union(acc, t)
    return acc


def difference(t1, t2):
    if t1 is None:
        return None
    if t2 is None:
        return t1
    l1, r1 = split(t2.elem, t1)
    l1l2 = difference(l1, t2.left)
    r1r2 = difference(r1, t2.right)
    if size(l1l2) + size(r1r2) == t1.size:
        return t1
    return merge(l1l2, r1r2)


def intersection(t1, t2):
    if t1 is None or t2 is None:
        return None
    x = t1.elem
    l2, found, r2 = split_member(x, t2)
    l1l2 = intersection(t1.left, l2)
    r1r2 = intersection(t1.right, r2)
    if found:
        if l1l2 is t1.left and r1r2 is t1.right:
            return t1
        return link(x, l1l2, r1r2)
    return merge(l1l2, r1r2)


def disjoint(t1, t2):
    if t1 is None or t2 is None:
        return True
    if t1.size == 1:
        return not member(t1.elem, t2)
    lt, found, gt = split_member(t1.elem, t2)
    return not found and disjoint(t1.left, lt) and disjoint(t1.right, gt)


def is_subset_of(t1, t2):
    return size(t1) <= size(t2) and _is_subset_of_x(t1, t2)


def _is_subset_of_x(t1, t2):
    if t1 is None:
        return True
    if t2 is None:
        return False
    if t1.size == 1:
        return member(t1.elem, t2)
    lt, found, gt = split_member(t1.elem, t2)
    return (
        found
        and size(t1.left) <= size(lt)
        and size(t1.right) <= size(gt)
        and _is_subset_of_x(t1.left, lt)
        and _is_subset_of_x(t1.right, gt)
    )


def filter(p, t):
    if t is None:
        return None
    l = filter(p, t.left)
    r = filter(p, t.right)
    if p(t.elem):
        if l is t.left and r is t.right:
            return t
        return link(t.elem, l, r)
    return merge(l, r)


def partition(p, t):
    """``(filter(p, t), filter(not p, t))`` in one pass."""
    if t is None:
        return None, None
    l1, l2 = partition(p, t.left)
    r1, r2 = partition(p, t.right)
    if p(t.elem):
        if l1 is t.left and r1 is t.right:
            return t, merge(l2, r2)
        return link(t.elem, l1, r1), merge(l2, r2)
    if l2 is t.left and r2 is t.right:
        return merge(l1, r1), t
    return merge(l1, r1), link(t.elem, l2, r2)


def map_monotonic(f, t):
    """Apply a strictly increasing ``f``; monotonicity is not checked."""
    if t is None:
        return None
    return Bin(t.size, f(t.elem), map_monotonic(f, t.left), map_monotonic(f, t.right))


# ---------------------------------------------------------------------------
# indexed operations


def take(n, t):
    if n >= size(t):
        return t
    return _take(n, t)


def _take(n, t):
    if n <= 0 or t is None:
        return None
    sl = size(t.left)
    if n < sl:
        return _take(n, t.left)
    if n > sl:
        return link(t.elem, t.left, _take(n - sl - 1, t.right))
    return t.left


def drop(n, t):
    if n >= size(t):
        return None
    return _drop(n, t)


def _drop(n, t):
    if n <= 0 or t is None:
        return t
    sl = size(t.left)
    if n < sl:
        return link(t.elem, _drop(n, t.left), t.right)
    if n > sl:
        return _drop(n - sl - 1, t.right)
    return insert_min(t.elem, t.right)


def split_at(n, t):
    return take(n, t), drop(n, t)


# ---------------------------------------------------------------------------
# folds and conversion


def foldr(f, z, t):
    """``f(x1, f(x2, ... f(xn, z)))`` over the ascending elements."""
    acc = z
    for x in _iter_desc(t):
        acc = f(x, acc)
    return acc


def foldl(f, z, t):
    """``f(... f(f(z, x1), x2) ..., xn)`` over the ascending elements."""
    acc = z
    for x in _iter_asc(t):
        acc = f(acc, x)
    return acc


# Python evaluates eagerly, so the strict folds coincide with the lazy ones.
foldr_strict = foldr
foldl_strict = foldl


def _iter_asc(t):
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        yield t.elem
        t = t.right


def _iter_desc(t):
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.right
        t = stack.pop()
        yield t.elem
        t = t.left


def to_asc_list(t):
    out = []
    _collect(t, out.append)
    return out


def _collect(t, emit):
    while t is not None:
        _collect(t.left, emit)
        emit(t.elem)
        t = t.right


def to_desc_list(t):
    return list(_iter_desc(t))


to_list = to_asc_list
elems = to_asc_list


def from_list(xs):
    t = None
    for x in xs:
        t = insert(x, t)
    return t


def from_distinct_asc_list(xs):
    """Build a tree from strictly increasing input in linear time.

    Unsorted input is not detected and yields an ill-formed tree.
    """
    xs = list(xs)
    if not xs:
        return None
    n = len(xs)

    def create(s, i):
        # A perfectly balanced tree of up to 2*s - 1 elements from xs[i:].
        if i >= n:
            return None, i
        if s == 1:
            return Bin(1, xs[i], None, None), i + 1
        l, j = create(s >> 1, i)
        if j >= n:
            return l, j
        r, k = create(s >> 1, j + 1)
        return link(xs[j], l, r), k

    s = 1
    t = Bin(1, xs[0], None, None)
    i = 1
    while i < n:
        r, j = create(s, i + 1)
        t = link(xs[i], t, r)
        i = j
        s <<= 1
    return t


def from_distinct_desc_list(xs):
    """Mirror of :func:`from_distinct_asc_list` for strictly decreasing input."""
    xs = list(xs)
    if not xs:
        return None
    n = len(xs)

    def create(s, i):
        if i >= n:
            return None, i
        if s == 1:
            return Bin(1, xs[i], None, None), i + 1
        r, j = create(s >> 1, i)
        if j >= n:
            return r, j
        l, k = create(s >> 1, j + 1)
        return link(xs[j], l, r), k

    s = 1
    t = Bin(1, xs[0], None, None)
    i = 1
    while i < n:
        l, j = create(s, i + 1)
        t = link(xs[i], l, t)
        i = j
        s <<= 1
    return t


def _combine_eq(xs):
    out = []
    for x in xs:
        if out and not (out[-1] < x or x < out[-1]):
            continue
        out.append(x)
    return out


def from_asc_list(xs):
    """Non-decreasing input; duplicates collapse to their first occurrence."""
    return from_distinct_asc_list(_combine_eq(xs))


def from_desc_list(xs):
    return from_distinct_desc_list(_combine_eq(xs))


# ---------------------------------------------------------------------------
# comparison


def equals(t1, t2):
    """Extensional equality: same elements, regardless of shape."""
    if size(t1) != size(t2):
        return False
    for a, b in zip(_iter_asc(t1), _iter_asc(t2)):
        if a < b or b < a:
            return False
    return True


def compare_sets(t1, t2):
    """Lexicographic comparison of the ascending element lists: -1, 0 or 1."""
    it1 = _iter_asc(t1)
    it2 = _iter_asc(t2)
    while True:
        a = next(it1, _END)
        b = next(it2, _END)
        if a is _END:
            return 0 if b is _END else -1
        if b is _END:
            return 1
        if a < b:
            return -1
        if b < a:
            return 1


_END = object()


def same_node(t1, t2):
    """Physical identity, the stand-in for pointer equality."""
    return t1 is t2


# ---------------------------------------------------------------------------
# object wrapper


class WBSet:
    """Immutable set facade over a weight-balanced tree.

    >>> s = WBSet([3, 1, 2])
    >>> list(s), 2 in s, len(s | WBSet([9]))
    ([1, 2, 3], True, 4)
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
        return "WBSet(%r)" % (to_asc_list(self.root),)

    def insert(self, x):
        return WBSet.from_tree(insert(x, self.root))

    def delete(self, x):
        return WBSet.from_tree(delete(x, self.root))

    def __or__(self, other):
        return WBSet.from_tree(union(self.root, other.root))

    def __and__(self, other):
        return WBSet.from_tree(intersection(self.root, other.root))

    def __sub__(self, other):
        return WBSet.from_tree(difference(self.root, other.root))

    def isdisjoint(self, other):
        return disjoint(self.root, other.root)

    def issubset(self, other):
        return is_subset_of(self.root, other.root)

    def __eq__(self, other):
        if not isinstance(other, WBSet):
            return NotImplemented
        return equals(self.root, other.root)

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
