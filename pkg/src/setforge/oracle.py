"""Reference model: sets as strictly ascending tuples.

Deliberately slow and simple.  Every operation is a textbook sorted-merge or
binary search, so that the model can be audited by eye before it is trusted
to judge the trees.
"""

from bisect import bisect_left
from itertools import combinations


def o_from_iter(xs):
    return tuple(sorted(set(xs)))


def is_oracle_set(xs):
    return all(a < b for a, b in zip(xs, xs[1:]))


def o_member(x, xs):
    i = bisect_left(xs, x)
    return i < len(xs) and xs[i] == x


def o_size(xs):
    return len(xs)


def o_insert(x, xs):
    i = bisect_left(xs, x)
    if i < len(xs) and xs[i] == x:
        return xs
    return xs[:i] + (x,) + xs[i:]


def o_delete(x, xs):
    i = bisect_left(xs, x)
    if i < len(xs) and xs[i] == x:
        return xs[:i] + xs[i + 1:]
    return xs


def o_union(xs, ys):
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        if xs[i] < ys[j]:
            out.append(xs[i])
            i += 1
        elif ys[j] < xs[i]:
            out.append(ys[j])
            j += 1
        else:
            out.append(xs[i])
            i += 1
            j += 1
    out.extend(xs[i:])
    out.extend(ys[j:])
    return tuple(out)


def o_intersection(xs, ys):
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        if xs[i] < ys[j]:
            i += 1
        elif ys[j] < xs[i]:
            j += 1
        else:
            out.append(xs[i])
            i += 1
            j += 1
    return tuple(out)


def o_difference(xs, ys):
    out = []
    i = j = 0
    while i < len(xs):
        if j >= len(ys) or xs[i] < ys[j]:
            out.append(xs[i])
            i += 1
        elif ys[j] < xs[i]:
            j += 1
        else:
            i += 1
            j += 1
    return tuple(out)


def o_filter(p, xs):
    return tuple(x for x in xs if p(x))


def o_split(x, xs):
    """``(elements < x, x in xs, elements > x)``."""
    i = bisect_left(xs, x)
    found = i < len(xs) and xs[i] == x
    return xs[:i], found, xs[i + 1:] if found else xs[i:]


def o_subset(xs, ys):
    return o_difference(xs, ys) == ()


def o_equal(xs, ys):
    return tuple(xs) == tuple(ys)


def o_compare(xs, ys):
    xs, ys = tuple(xs), tuple(ys)
    return (xs > ys) - (xs < ys)


def enumerate_universe(n):
    """Every subset of ``{0, ..., n-1}`` exactly once, smallest first."""
    if not 0 <= n <= 16:
        raise ValueError("universe size must be between 0 and 16, got %r" % (n,))
    out = []
    for k in range(n + 1):
        out.extend(combinations(range(n), k))
    return out
