"""Smoke benchmarks with CSV output.

Methodology: a monotonic nanosecond clock, one discarded warm-up round, then
``reps`` timed rounds of a fixed batch of operations; the reported figure is
the median time per operation.  Nothing here is a pass/fail threshold, except
that ``wb.union.singleton`` checks the fast and the generic union agree on
every input it times.
"""

import csv
import random
import statistics
import time

from setforge import patricia, wbtree
from setforge.bitops import WORD_MASK

CSV_FIELDS = ("op", "size", "reps", "ns_per_op_median", "checksum")
BATCH = 256


class BenchMismatch(AssertionError):
    pass


def _keys(rng, n):
    return rng.sample(range(4 * n + 8), n)


def _time(fn, reps):
    fn()  # warm-up, discarded
    samples = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return statistics.median(samples)


def _row(op, size, reps, ns_total, batch, checksum):
    return {
        "op": op,
        "size": size,
        "reps": reps,
        "ns_per_op_median": round(ns_total / max(batch, 1), 1),
        "checksum": checksum,
    }


def _member_bench(mod, rng, size):
    keys = _keys(rng, size)
    t = mod.from_list(keys)
    probes = [rng.randrange(4 * size + 8) for _ in range(BATCH)]
    member = mod.member

    def run():
        return sum(1 for x in probes if member(x, t))

    return run, run()


def _insert_bench(mod, rng, size):
    t = mod.from_list(_keys(rng, size))
    xs = [rng.randrange(4 * size + 8) for _ in range(BATCH)]
    insert, sz = mod.insert, mod.size

    def run():
        return sum(sz(insert(x, t)) for x in xs) & WORD_MASK

    return run, run()


def _delete_bench(mod, rng, size):
    t = mod.from_list(_keys(rng, size))
    xs = [rng.randrange(4 * size + 8) for _ in range(BATCH)]
    delete, sz = mod.delete, mod.size

    def run():
        return sum(sz(delete(x, t)) for x in xs) & WORD_MASK

    return run, run()


def _binary_bench(mod, opname, rng, size):
    a = mod.from_list(_keys(rng, size))
    b = mod.from_list(_keys(rng, size))
    fn, sz = getattr(mod, opname), mod.size

    def run():
        return sz(fn(a, b))

    return run, run()


def _single(fn):
    # binary set operations time one call per round
    fn.batch = 1
    return fn


BENCHES = {
    "wb.member": lambda rng, n: _member_bench(wbtree, rng, n),
    "wb.insert": lambda rng, n: _insert_bench(wbtree, rng, n),
    "wb.delete": lambda rng, n: _delete_bench(wbtree, rng, n),
    "wb.union": _single(lambda rng, n: _binary_bench(wbtree, "union", rng, n)),
    "wb.intersection": _single(lambda rng, n: _binary_bench(wbtree, "intersection", rng, n)),
    "wb.difference": _single(lambda rng, n: _binary_bench(wbtree, "difference", rng, n)),
    "pt.member": lambda rng, n: _member_bench(patricia, rng, n),
    "pt.insert": lambda rng, n: _insert_bench(patricia, rng, n),
    "pt.delete": lambda rng, n: _delete_bench(patricia, rng, n),
    "pt.union": _single(lambda rng, n: _binary_bench(patricia, "union", rng, n)),
    "pt.intersection": _single(lambda rng, n: _binary_bench(patricia, "intersection", rng, n)),
    "pt.difference": _single(lambda rng, n: _binary_bench(patricia, "difference", rng, n)),
}

BENCH_OPS = tuple(sorted(BENCHES)) + ("wb.union.singleton",)


def singleton_pairs(rng, size, count):
    """``count`` (big, singleton) pairs over a shared tree of ``size`` keys;
    about half the singletons hit an existing key."""
    keys = _keys(rng, size)
    t = wbtree.from_list(keys)
    pairs = []
    for _ in range(count):
        if keys and rng.random() < 0.5:
            x = rng.choice(keys)
        else:
            x = rng.randrange(4 * size + 8)
        pairs.append((t, wbtree.singleton(x)))
    return pairs


def check_singleton_union(pairs):
    """Fast and generic union agree on both argument orders of every pair.

    Returns the number of comparisons; raises :class:`BenchMismatch`.
    """
    n = 0
    for big, one in pairs:
        for l, r in ((big, one), (one, big)):
            fast = wbtree.union(l, r)
            slow = wbtree.union_generic(l, r)
            if not wbtree.equals(fast, slow):
                raise BenchMismatch(
                    "fast and generic union differ on singleton %r" % (one.elem,)
                )
            n += 1
    return n


def _singleton_rows(rng, size, reps):
    pairs = singleton_pairs(rng, size, BATCH // 2)
    check_singleton_union(pairs)
    rows = []
    for label, fn in (("fast", wbtree.union), ("generic", wbtree.union_generic)):

        def run(fn=fn):
            total = 0
            for big, one in pairs:
                total += fn(big, one).size + fn(one, big).size
            return total

        checksum = run()
        rows.append(_row("wb.union.singleton." + label, size, reps, _time(run, reps), 2 * len(pairs), checksum))
    return rows


def bench(op, size, reps, seed=0):
    """Time ``op`` on inputs of ``size`` keys; returns CSV row dicts."""
    if op not in BENCH_OPS:
        raise KeyError("unknown benchmark %r; known: %s" % (op, ", ".join(BENCH_OPS)))
    if size < 0 or reps < 1:
        raise ValueError("size must be >= 0 and reps >= 1")
    rng = random.Random(seed)
    if op == "wb.union.singleton":
        return _singleton_rows(rng, size, reps)
    make = BENCHES[op]
    run, checksum = make(rng, size)
    batch = getattr(make, "batch", BATCH)
    return [_row(op, size, reps, _time(run, reps), batch, checksum)]


def write_csv(rows, fp, header=True):
    w = csv.DictWriter(fp, fieldnames=CSV_FIELDS, lineterminator="\n")
    if header:
        w.writeheader()
    w.writerows(rows)
