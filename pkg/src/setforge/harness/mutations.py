"""Corruptions of well-formed trees, each guaranteed to break an invariant.

A mutation picks a node (by a path of ``"L"``/``"R"`` steps), rebuilds the
spine above it, and returns the corrupted tree together with the rule the
checker is expected to report.  Mutations only apply to trees that have a
suitable node; :func:`applicable` tells which.
"""

import random

from setforge import patricia, wbtree
from setforge.bitops import WORD_MASK
from setforge.validity import (
    PT_MASK_POW2,
    PT_NIL_CHILD,
    PT_PREFIX_CLEAN,
    PT_RANGE_HALF,
    PT_TIP_ALIGN,
    PT_TIP_EMPTY,
    WB_BALANCE,
    WB_ORDER,
    WB_SIZE,
)


def _paths(t):
    """Every (path, node) pair, root first."""
    out = []
    stack = [("", t)]
    while stack:
        path, node = stack.pop()
        if node is None or type(node) is patricia.Tip:
            if node is not None:
                out.append((path, node))
            continue
        out.append((path, node))
        stack.append((path + "R", node.right))
        stack.append((path + "L", node.left))
    return out


def _copy(node, **changes):
    if type(node) is wbtree.Bin:
        fields = dict(size=node.size, elem=node.elem, left=node.left, right=node.right)
        fields.update(changes)
        return wbtree.Bin(fields["size"], fields["elem"], fields["left"], fields["right"])
    if type(node) is patricia.Bin:
        fields = dict(prefix=node.prefix, mask=node.mask, left=node.left, right=node.right)
        fields.update(changes)
        return patricia.Bin(fields["prefix"], fields["mask"], fields["left"], fields["right"])
    fields = dict(prefix=node.prefix, bitmap=node.bitmap)
    fields.update(changes)
    return patricia.Tip(fields["prefix"], fields["bitmap"])


def replace_at(t, path, new):
    """Copy of ``t`` with the node at ``path`` replaced by ``new``.

    Stored sizes on the way down are left alone, as they would be in a
    buggy update.
    """
    if not path:
        return new
    child = t.left if path[0] == "L" else t.right
    sub = replace_at(child, path[1:], new)
    return _copy(t, left=sub) if path[0] == "L" else _copy(t, right=sub)


def _node_at(t, path):
    for step in path:
        t = t.left if step == "L" else t.right
    return t


# ---------------------------------------------------------------------------
# weight-balanced trees


def _wb_nodes(t):
    return [(p, n) for p, n in _paths(t) if type(n) is wbtree.Bin]


def _wb_size_off(t, rng):
    path, node = rng.choice(_wb_nodes(t))
    delta = rng.choice((-1, 1, 2))
    return replace_at(t, path, _copy(node, size=node.size + delta))


def _wb_swap_children(t, rng):
    cands = [(p, n) for p, n in _wb_nodes(t) if n.size > 1]
    path, node = rng.choice(cands)
    return replace_at(t, path, _copy(node, left=node.right, right=node.left))


def _wb_out_of_range(t, rng):
    top = wbtree.lookup_max(t)
    cands = [(p, n) for p, n in _wb_nodes(t) if n.elem != top]
    path, node = rng.choice(cands)
    return replace_at(t, path, _copy(node, elem=top + 1 + rng.randrange(5)))


def _wb_duplicate(t, rng):
    # copy a neighbouring element into a node: order must be strict
    xs = wbtree.to_asc_list(t)
    path, node = rng.choice(_wb_nodes(t))
    i = xs.index(node.elem)
    j = i - 1 if i > 0 and (i == len(xs) - 1 or rng.random() < 0.5) else i + 1
    return replace_at(t, path, _copy(node, elem=xs[j]))


def _wb_chain(t, rng):
    # rebuild a subtree of size >= 3 as a right spine, sizes kept correct
    cands = [(p, n) for p, n in _wb_nodes(t) if n.size >= 3]
    path, node = rng.choice(cands)
    chain = None
    for x in reversed(wbtree.to_asc_list(node)):
        chain = wbtree.Bin(wbtree.size(chain) + 1, x, None, chain)
    return replace_at(t, path, chain)


def _wb_drop_subtree(t, rng):
    cands = [(p, n) for p, n in _wb_nodes(t) if n.left is not None or n.right is not None]
    path, node = rng.choice(cands)
    if node.left is not None and (node.right is None or rng.random() < 0.5):
        return replace_at(t, path, _copy(node, left=None))
    return replace_at(t, path, _copy(node, right=None))


WB_MUTATIONS = {
    "size-off": (WB_SIZE, lambda t: t is not None, _wb_size_off),
    "swap-children": (WB_ORDER, lambda t: wbtree.size(t) > 1, _wb_swap_children),
    "out-of-range": (WB_ORDER, lambda t: wbtree.size(t) > 1, _wb_out_of_range),
    "duplicate": (WB_ORDER, lambda t: wbtree.size(t) > 1, _wb_duplicate),
    "chain": (WB_BALANCE, lambda t: wbtree.size(t) >= 3, _wb_chain),
    "drop-subtree": (WB_SIZE, lambda t: wbtree.size(t) > 1, _wb_drop_subtree),
}


# ---------------------------------------------------------------------------
# Patricia trees


def _pt_bins(t):
    return [(p, n) for p, n in _paths(t) if type(n) is patricia.Bin]


def _pt_tips(t):
    return [(p, n) for p, n in _paths(t) if type(n) is patricia.Tip]


def _has_bin(t):
    return type(t) is patricia.Bin


def _pt_nil_child(t, rng):
    path, node = rng.choice(_pt_bins(t))
    side = rng.choice(("left", "right"))
    return replace_at(t, path, _copy(node, **{side: None}))


def _pt_mask_not_pow2(t, rng):
    path, node = rng.choice(_pt_bins(t))
    extra = 1 << rng.randrange(node.mask.bit_length() - 1)
    return replace_at(t, path, _copy(node, mask=node.mask | extra))


def _pt_dirty_prefix(t, rng):
    path, node = rng.choice(_pt_bins(t))
    low = 1 << rng.randrange(node.mask.bit_length())
    return replace_at(t, path, _copy(node, prefix=node.prefix | low))


def _pt_empty_tip(t, rng):
    path, node = rng.choice(_pt_tips(t))
    return replace_at(t, path, _copy(node, bitmap=0))


def _pt_unaligned_tip(t, rng):
    path, node = rng.choice(_pt_tips(t))
    return replace_at(t, path, _copy(node, prefix=node.prefix | (1 << rng.randrange(6))))


def _pt_swap_children(t, rng):
    path, node = rng.choice(_pt_bins(t))
    return replace_at(t, path, _copy(node, left=node.right, right=node.left))


def _pt_move_tip(t, rng):
    # move a tip below a Bin across that Bin's mask bit
    cands = [(p, n) for p, n in _pt_tips(t) if p]
    path, node = rng.choice(cands)
    parent = _node_at(t, path[:-1])
    return replace_at(t, path, _copy(node, prefix=node.prefix ^ parent.mask))


PT_MUTATIONS = {
    "nil-child": (PT_NIL_CHILD, _has_bin, _pt_nil_child),
    "mask-not-pow2": (PT_MASK_POW2, _has_bin, _pt_mask_not_pow2),
    "dirty-prefix": (PT_PREFIX_CLEAN, _has_bin, _pt_dirty_prefix),
    "empty-tip": (PT_TIP_EMPTY, lambda t: t is not None, _pt_empty_tip),
    "unaligned-tip": (PT_TIP_ALIGN, lambda t: t is not None, _pt_unaligned_tip),
    "swap-children": (PT_RANGE_HALF, _has_bin, _pt_swap_children),
    "move-tip": (PT_RANGE_HALF, _has_bin, _pt_move_tip),
}

MUTATIONS = {"wb": WB_MUTATIONS, "pt": PT_MUTATIONS}


def applicable(kind, t):
    return [name for name, (_, ok, _) in MUTATIONS[kind].items() if ok(t)]


def mutate(kind, name, t, rng):
    """Apply mutation ``name``; returns ``(corrupt_tree, expected_rule)``."""
    rule, ok, fn = MUTATIONS[kind][name]
    if not ok(t):
        raise ValueError("mutation %s does not apply to this tree" % name)
    return fn(t, rng), rule


def random_valid_tree(kind, rng, min_size=3, max_size=120):
    """A well-formed tree big enough for every mutation of its kind."""
    n = rng.randint(min_size, max_size)
    width = rng.choice((8, 12, 16, 32, 64))
    if kind == "wb":
        keys = rng.sample(range(-(1 << 20), 1 << 20), n)
        return wbtree.from_list(keys)
    while True:
        keys = [rng.getrandbits(width) & WORD_MASK for _ in range(n)]
        t = patricia.from_list(keys)
        if _has_bin(t):
            return t
        width = 64


def mutation_kill(kind, trees_per_mutation, seed, check):
    """Run every mutation on fresh random trees through ``check``.

    Returns ``{name: (killed, total, rule_hits)}``: ``killed`` counts rejected
    trees and ``rule_hits`` those whose report names the expected rule.
    """
    rng = random.Random(seed)
    out = {}
    for name in MUTATIONS[kind]:
        killed = hits = 0
        for _ in range(trees_per_mutation):
            t = random_valid_tree(kind, rng)
            bad, rule = mutate(kind, name, t, rng)
            report = check(bad)
            if not report.ok:
                killed += 1
            if rule in report.rules:
                hits += 1
        out[name] = (killed, trees_per_mutation, hits)
    return out
