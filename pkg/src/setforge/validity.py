"""Executable well-formedness checkers for both tree types.

The checkers accept arbitrary, possibly corrupt trees and report every
violated rule instead of stopping at the first one.  Rule identifiers are
stable strings consumed by the CLI and the fuzz reports.
"""

from dataclasses import dataclass, field

from setforge import patricia, wbtree
from setforge.bitops import WORD_MASK, is_power_of_two
from setforge.patricia import DyadicRange

WB_ORDER = "wb.order"
WB_SIZE = "wb.size"
WB_BALANCE = "wb.balance"
PT_NIL_CHILD = "pt.nil-child"
PT_MASK_POW2 = "pt.mask-pow2"
PT_PREFIX_CLEAN = "pt.prefix-clean"
PT_RANGE_HALF = "pt.range-half"
PT_TIP_ALIGN = "pt.tip-align"
PT_TIP_EMPTY = "pt.tip-empty"

RULES = (
    WB_ORDER,
    WB_SIZE,
    WB_BALANCE,
    PT_NIL_CHILD,
    PT_MASK_POW2,
    PT_PREFIX_CLEAN,
    PT_RANGE_HALF,
    PT_TIP_ALIGN,
    PT_TIP_EMPTY,
)


@dataclass(frozen=True)
class Failure:
    path: str  # "L"/"R" steps from the root; "" is the root itself
    rule: str
    detail: str

    def __str__(self):
        return "%s at %s: %s" % (self.rule, format_path(self.path), self.detail)


@dataclass
class ValidityReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    @property
    def rules(self):
        return sorted({f.rule for f in self.failures})

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(f) for f in self.failures)


def format_path(path):
    return path if path else "<root>"


# ---------------------------------------------------------------------------
# weight-balanced trees


def check_wbset(t):
    """Ordering (via threaded bounds), size fields and balance at every node."""
    failures = []
    _check_wb(t, None, None, "", failures)
    return ValidityReport(failures)


def _check_wb(t, lb, ub, path, failures):
    # Returns the real number of elements below t.
    if t is None:
        return 0
    x = t.elem
    if lb is not None and not lb < x:
        failures.append(Failure(path, WB_ORDER, "element %r not above lower bound %r" % (x, lb)))
    if ub is not None and not x < ub:
        failures.append(Failure(path, WB_ORDER, "element %r not below upper bound %r" % (x, ub)))
    nl = _check_wb(t.left, lb, x, path + "L", failures)
    nr = _check_wb(t.right, x, ub, path + "R", failures)
    real = nl + nr + 1
    if t.size != real:
        failures.append(Failure(path, WB_SIZE, "stored %r, computed %d" % (t.size, real)))
    if not wbtree.balanced(nl, nr):
        failures.append(Failure(path, WB_BALANCE, "subtree sizes %d and %d out of balance" % (nl, nr)))
    return real


def is_valid_wbset(t):
    return check_wbset(t).ok


# ---------------------------------------------------------------------------
# Patricia trees


def check_patricia(t):
    """The type-level invariants, checked recursively at every depth."""
    failures = []
    if t is not None:
        _check_pt(t, "", failures)
    return ValidityReport(failures)


def _check_pt(t, path, failures):
    # Returns the smallest dyadic range (p, b) holding t's keys, or None
    # when t is too broken for a range to make sense.
    if type(t) is patricia.Tip:
        p, bm = t.prefix, t.bitmap
        if not (0 <= p <= WORD_MASK and p & 63 == 0):
            failures.append(Failure(path, PT_TIP_ALIGN, "tip prefix %#x is not a 64-aligned word" % p))
        if not 0 < bm <= WORD_MASK:
            failures.append(Failure(path, PT_TIP_EMPTY, "tip bitmap %#x not in 1..2^64-1" % bm))
        return (p >> 6, 6)
    if type(t) is not patricia.Bin:
        failures.append(Failure(path, PT_NIL_CHILD, "%r found below a Bin" % (t,)))
        return None
    p, m = t.prefix, t.mask
    ranges = []
    for side, child in (("L", t.left), ("R", t.right)):
        if child is None:
            failures.append(Failure(path + side, PT_NIL_CHILD, "Nil found below a Bin"))
            ranges.append(None)
        else:
            ranges.append(_check_pt(child, path + side, failures))
    if not (is_power_of_two(m) and m <= WORD_MASK):
        failures.append(Failure(path, PT_MASK_POW2, "mask %#x is not a single bit of a word" % m))
        return None
    b = m.bit_length()
    if not (0 <= p <= WORD_MASK and p >> b << b == p):
        failures.append(Failure(path, PT_PREFIX_CLEAN, "prefix %#x has bits at or below mask %#x" % (p, m)))
    here = (p >> b, b)
    for side, half, r in (("L", 2 * here[0], ranges[0]), ("R", 2 * here[0] + 1, ranges[1])):
        if r is None:
            continue
        cp, cb = r
        if not (cb < b and cp >> (b - 1 - cb) == half):
            failures.append(
                Failure(
                    path + side,
                    PT_RANGE_HALF,
                    "child range d(%d,%d) outside %s half d(%d,%d) of mask %#x"
                    % (cp, cb, "lower" if side == "L" else "upper", half, b - 1, m),
                )
            )
    return here


def is_valid_patricia(t):
    return check_patricia(t).ok


def desc_range(t):
    """Smallest dyadic range holding every key of a well-formed tree."""
    report = check_patricia(t)
    if not report.ok:
        raise ValueError("desc_range needs a well-formed tree:\n%s" % report)
    if t is None:
        return None
    if type(t) is patricia.Tip:
        return DyadicRange(t.prefix >> 6, 6)
    b = t.mask.bit_length()
    return DyadicRange(t.prefix >> b, b)
