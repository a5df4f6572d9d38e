"""Audit of the rebalancing precondition on weight-balanced trees.

Every call of ``balance_left``/``balance_right`` is recorded.  A call is a
*violation* when the (weaker, correct) precondition fails; such calls also
trip the assertion inside the tree code.  A call is a *historical witness*
when the older, stronger precondition fails but the weaker one holds: the
call is fine, yet it would have been rejected by the precondition that was
documented before ``link`` was taken into account.
"""

import logging
import random
from contextlib import contextmanager
from dataclasses import dataclass, field

from setforge import wbtree
from setforge.harness.scripts import WB, generate_script, run_script

log = logging.getLogger(__name__)


@dataclass
class AuditLog:
    calls: int = 0
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)  # (side, heavy, light)

    def record(self, side, heavy, light):
        self.calls += 1
        if not wbtree.balance_left_pre(heavy, light):
            self.violations.append((side, heavy, light))
        elif not wbtree.historical_balance_left_pre(heavy, light):
            if len(self.witnesses) < 1000:
                self.witnesses.append((side, heavy, light))
            log.info(
                "balance%s(heavy=%d, light=%d): historical precondition fails, bal*(%d, %d) holds",
                side, heavy, light, heavy - 1, light,
            )


@contextmanager
def audited():
    """Record every rebalancing call made inside the block."""
    entry = AuditLog()
    with wbtree.audit_balance(entry.record):
        yield entry


def _random_tree(rng, lo, n):
    keys = list(range(lo, lo + 2 * n, 2))
    rng.shuffle(keys)
    return wbtree.from_list(keys[:n])


def skewed_links(rng, rounds):
    """Join trees of very different sizes with ``link``.

    Returns the number of joins made; every result is validated.
    """
    for _ in range(rounds):
        small = rng.randint(0, 40)
        big = rng.randint(0, 400)
        a, b = (small, big) if rng.random() < 0.5 else (big, small)
        if rng.random() < 0.5:
            l = _random_tree(rng, 0, a)
        else:
            l = wbtree.from_distinct_asc_list(range(0, 2 * a, 2))
        mid = 2 * a + 1
        if rng.random() < 0.5:
            r = _random_tree(rng, mid + 1, b)
        else:
            r = wbtree.from_distinct_asc_list(range(mid + 1, mid + 1 + 2 * b, 2))
        t = wbtree.link(mid, l, r) if rng.random() < 0.75 else wbtree.merge(l, r)
        report = WB.check(t)
        if not report.ok:
            raise AssertionError("join produced an ill-formed tree:\n%s" % report)
    return rounds


def witness_link():
    """A small hand-made join where only the weaker precondition holds.

    The left tree has 3 elements; the right one has 13, split 9/3 below its
    root.  ``link`` descends into the right tree once, the 3+1+9 part comes
    back with 13 elements, and the final ``balance_left`` sees 13 against 3.
    """
    l = wbtree.from_distinct_asc_list([0, 1, 2])
    inner = wbtree.from_distinct_asc_list(list(range(10, 19)))
    outer = wbtree.from_distinct_asc_list([30, 31, 32])
    r = wbtree.link(20, inner, outer)
    return 5, l, r


@dataclass
class AuditResult:
    calls: int
    violations: list
    witnesses: list
    scripts: int
    joins: int

    @property
    def ok(self):
        return not self.violations and bool(self.witnesses)


def run_balance_audit(scripts=200, ops=200, joins=2000, seed=0):
    """Drive random scripts and skewed joins under the audit hook.

    Assertion errors from the tree code are not caught: a violated
    precondition is a failure of the build, not an audit finding.
    """
    rng = random.Random(seed)
    with audited() as entry:
        for _ in range(scripts):
            run_script(generate_script(rng.getrandbits(64), ops), WB, compare_each=False)
        skewed_links(rng, joins)
        x, l, r = witness_link()
        t = wbtree.link(x, l, r)
        if not WB.check(t).ok:
            raise AssertionError("witness join produced an ill-formed tree")
    return AuditResult(entry.calls, entry.violations, entry.witnesses, scripts, joins)
