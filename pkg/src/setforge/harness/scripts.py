"""Operation scripts and the lockstep runner.

A script is a flat list of operations applied to an initially empty set.
The same script drives a tree and the sorted-tuple oracle side by side; after
every step the tree is validated and compared with the oracle.

Text form, one operation per line after a ``seed=`` header::

    seed=0x2a
    insert 5
    union 1 2 3
    filter even
    split 4
    fold-check

Properties that take several sets separate their scripts with ``---`` lines.
"""

import random
from dataclasses import dataclass
from typing import NamedTuple

from setforge import oracle, patricia, validity, wbtree
from setforge.bitops import WORD_MASK

KEY_OPS = ("insert", "delete", "split")
LIST_OPS = ("union", "intersect", "difference", "fromlist")
OP_KINDS = KEY_OPS + LIST_OPS + ("filter", "fold-check")

OP_WEIGHTS = (
    ("insert", 34),
    ("delete", 18),
    ("union", 8),
    ("intersect", 5),
    ("difference", 6),
    ("filter", 4),
    ("split", 8),
    ("fold-check", 12),
    ("fromlist", 5),
)

KEY_WIDTHS = (4, 6, 8, 10, 12, 16, 24, 32, 48, 64)


class Op(NamedTuple):
    kind: str
    arg: object = None  # int key, tuple of keys, "even"/"odd", or None

    def __str__(self):
        if self.kind in KEY_OPS:
            return "%s %d" % (self.kind, self.arg)
        if self.kind in LIST_OPS:
            return " ".join([self.kind] + [str(k) for k in self.arg])
        if self.kind == "filter":
            return "filter %s" % self.arg
        return self.kind


@dataclass(frozen=True)
class OpScript:
    seed: int
    ops: tuple

    def __len__(self):
        return len(self.ops)

    def keys(self):
        out = []
        for op in self.ops:
            if op.kind in KEY_OPS:
                out.append(op.arg)
            elif op.kind in LIST_OPS:
                out.extend(op.arg)
        return out


class ScriptSyntaxError(ValueError):
    pass


def format_scripts(scripts):
    """Serialize one or more scripts sharing the first script's seed."""
    scripts = list(scripts)
    seed = scripts[0].seed if scripts else 0
    lines = ["seed=%#x" % seed]
    for i, s in enumerate(scripts):
        if i:
            lines.append("---")
        lines.extend(str(op) for op in s.ops)
    return "\n".join(lines) + "\n"


def parse_scripts(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("seed="):
        raise ScriptSyntaxError("script must start with a seed=<hex> line")
    try:
        seed = int(lines[0][5:], 16)
    except ValueError:
        raise ScriptSyntaxError("bad seed %r" % lines[0][5:]) from None
    groups = [[]]
    for ln in lines[1:]:
        if ln == "---":
            groups.append([])
        else:
            groups[-1].append(parse_op(ln))
    return [OpScript(seed, tuple(g)) for g in groups]


def parse_op(line):
    words = line.split()
    kind, args = words[0], words[1:]
    try:
        if kind in KEY_OPS and len(args) == 1:
            return Op(kind, _key(args[0]))
        if kind in LIST_OPS:
            return Op(kind, tuple(_key(a) for a in args))
        if kind == "filter" and args in (["even"], ["odd"]):
            return Op(kind, args[0])
        if kind == "fold-check" and not args:
            return Op(kind)
    except ValueError:
        pass
    raise ScriptSyntaxError("bad operation %r" % line)


def _key(text):
    k = int(text, 0)
    if not 0 <= k <= WORD_MASK:
        raise ValueError(text)
    return k


# ---------------------------------------------------------------------------
# generation


class KeyGen:
    """Key mix: 60% uniform over a random width, 20% ascending runs, 20% dense
    clusters near a few centres (to fill bitmaps and deepen Bins)."""

    def __init__(self, rng, width=None):
        self.rng = rng
        self.width = width if width is not None else rng.choice(KEY_WIDTHS)
        top = (1 << self.width) - 1
        self.centres = [rng.randint(0, top) for _ in range(3)]
        self.last = rng.randint(0, top)
        self.seen = []

    def key(self):
        rng = self.rng
        r = rng.random()
        if r < 0.6:
            k = rng.getrandbits(self.width)
        elif r < 0.8:
            self.last = min(self.last + rng.randint(1, 3), WORD_MASK)
            k = self.last
        else:
            k = min(rng.choice(self.centres) + rng.randrange(128), WORD_MASK)
        self.seen.append(k)
        return k

    def known_key(self):
        if self.seen and self.rng.random() < 0.7:
            return self.rng.choice(self.seen)
        return self.key()

    def keys(self, hi=12):
        return tuple(self.key() for _ in range(self.rng.randint(0, hi)))


def generate_script(seed, n_ops, width=None):
    rng = random.Random(seed)
    gen = KeyGen(rng, width)
    kinds = [k for k, _ in OP_WEIGHTS]
    weights = [w for _, w in OP_WEIGHTS]
    ops = []
    for kind in rng.choices(kinds, weights, k=n_ops):
        if kind == "insert":
            ops.append(Op(kind, gen.key()))
        elif kind in ("delete", "split"):
            ops.append(Op(kind, gen.known_key()))
        elif kind in LIST_OPS:
            ops.append(Op(kind, gen.keys()))
        elif kind == "filter":
            ops.append(Op(kind, rng.choice(("even", "odd"))))
        else:
            ops.append(Op(kind))
    return OpScript(seed, tuple(ops))


# ---------------------------------------------------------------------------
# structures


class Structure:
    """One tree implementation plus its checker.

    Attribute access falls through to the module at call time, so functions
    patched in by fault injection are picked up.
    """

    def __init__(self, name, module, check):
        self.name = name
        self.module = module
        self.check = check

    def __getattr__(self, attr):
        return getattr(self.module, attr)

    def __repr__(self):
        return "Structure(%r)" % self.name

    def build(self, script, compare_each=True):
        return run_script(script, self, compare_each=compare_each)


WB = Structure("wb", wbtree, validity.check_wbset)
PT = Structure("pt", patricia, validity.check_patricia)
STRUCTURES = {"wb": WB, "pt": PT}


class ScriptFailure(AssertionError):
    def __init__(self, structure, step, op, message, report=None):
        where = "step %d (%s)" % (step, op) if op is not None else "setup"
        super().__init__("%s %s: %s" % (structure, where, message))
        self.step = step
        self.op = op
        self.report = report


def _parity(arg):
    want = 0 if arg == "even" else 1
    return lambda k: k % 2 == want


def run_script(script, S, compare_each=True):
    """Run ``script`` on structure ``S`` and the oracle in lockstep.

    Every intermediate tree is validated; with ``compare_each`` its contents
    are also compared against the oracle after every step (otherwise only at
    fold-check steps and at the end).  Returns ``(tree, oracle_tuple)``.
    """
    t = None
    o = ()
    for step, op in enumerate(script.ops):
        kind, arg = op
        if kind == "insert":
            t = S.insert(arg, t)
            o = oracle.o_insert(arg, o)
        elif kind == "delete":
            t = S.delete(arg, t)
            o = oracle.o_delete(arg, o)
        elif kind == "union":
            t = S.union(t, S.from_list(arg))
            o = oracle.o_union(o, oracle.o_from_iter(arg))
        elif kind == "intersect":
            t = S.intersection(t, S.from_list(arg))
            o = oracle.o_intersection(o, oracle.o_from_iter(arg))
        elif kind == "difference":
            t = S.difference(t, S.from_list(arg))
            o = oracle.o_difference(o, oracle.o_from_iter(arg))
        elif kind == "fromlist":
            t = S.from_list(arg)
            o = oracle.o_from_iter(arg)
        elif kind == "filter":
            t = S.filter(_parity(arg), t)
            o = oracle.o_filter(_parity(arg), o)
        elif kind == "split":
            t = _split_and_relink(S, arg, t, o, step, op)
        elif kind == "fold-check":
            _fold_check(S, t, o, step, op)
        else:
            raise ValueError("unknown operation %r" % (op,))
        report = S.check(t)
        if not report.ok:
            raise ScriptFailure(S.name, step, op, "ill-formed result\n%s" % report, report)
        if compare_each:
            _compare(S, t, o, step, op)
    if not compare_each:
        _compare(S, t, o, len(script.ops), None)
    return t, o


def _compare(S, t, o, step, op):
    got = S.to_asc_list(t)
    if tuple(got) != o:
        raise ScriptFailure(S.name, step, op, "contents %r differ from oracle %r" % (got, list(o)))
    if S.size(t) != len(o):
        raise ScriptFailure(S.name, step, op, "size %d, oracle has %d" % (S.size(t), len(o)))


def _split_and_relink(S, k, t, o, step, op):
    lt, found, gt = S.split_member(k, t)
    olt, ofound, ogt = oracle.o_split(k, o)
    for part, expect, label in ((lt, olt, "lower"), (gt, ogt, "upper")):
        report = S.check(part)
        if not report.ok:
            raise ScriptFailure(S.name, step, op, "ill-formed %s part\n%s" % (label, report), report)
        if tuple(S.to_asc_list(part)) != expect:
            raise ScriptFailure(S.name, step, op, "%s part %r, oracle %r" % (label, S.to_asc_list(part), list(expect)))
    if found != ofound:
        raise ScriptFailure(S.name, step, op, "split membership %r, oracle %r" % (found, ofound))
    if S.name == "wb":
        return S.link(k, lt, gt) if found else S.merge(lt, gt)
    rejoined = S.union(lt, gt)
    if found:
        rejoined = S.insert(k, rejoined)
    report = S.check(rejoined)
    if not report.ok:
        raise ScriptFailure(S.name, step, op, "ill-formed rejoined tree\n%s" % report, report)
    if rejoined != t:
        raise ScriptFailure(S.name, step, op, "rejoined halves are not structurally identical to the input")
    return rejoined


def _fold_check(S, t, o, step, op):
    expect = list(o)
    checks = (
        ("toAscList", S.to_asc_list(t)),
        ("foldr", S.foldr(lambda x, acc: [x] + acc, [], t)),
        ("foldl", S.foldl(lambda acc, x: acc + [x], [], t)),
        ("toDescList reversed", S.to_desc_list(t)[::-1]),
    )
    for name, got in checks:
        if got != expect:
            raise ScriptFailure(S.name, step, op, "%s gives %r, oracle %r" % (name, got, expect))
