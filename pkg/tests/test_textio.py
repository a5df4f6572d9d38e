import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setforge import patricia as pt
from setforge import textio
from setforge import wbtree as wb
from setforge.bitops import WORD_MASK

int64 = st.integers(-(2**63), 2**63 - 1)


def test_wb_canonical_form():
    t = wb.from_list([2, 1, 3])
    assert textio.format_wbset(t) == "(bin 3 2 (bin 1 1 tip tip) (bin 1 3 tip tip))"
    assert textio.format_wbset(None) == "tip"
    messy = "  (bin 3 2\n\t(bin 1 1 tip tip)\n   (bin 1 3 tip    tip))\n"
    assert textio.format_wbset(textio.parse_wbset(messy)) == textio.format_wbset(t)


def test_pt_canonical_form():
    t = pt.from_list([1, 64])
    text = textio.format_pset(t)
    assert text == "(bin 0 64 (tip 0 2) (tip 64 1))"
    assert textio.parse_pset("(bin 0x0 0x40 (tip 0 0x2) (tip 0x40 1))") == t
    assert textio.format_pset(None) == "nil"


@given(st.lists(int64, max_size=40))
def test_wb_round_trip(xs):
    t = wb.from_list(xs)
    text = textio.format_wbset(t)
    back = textio.parse_wbset(text)
    assert textio.format_wbset(back) == text
    assert wb.to_asc_list(back) == sorted(set(xs))


@given(st.lists(st.integers(0, WORD_MASK), max_size=40))
def test_pt_round_trip(xs):
    t = pt.from_list(xs)
    text = textio.format_pset(t)
    assert textio.parse_pset(text) == t
    assert textio.format_pset(textio.parse_pset(text)) == text


def test_parsers_keep_corrupt_trees():
    t = textio.parse_wbset("(bin 7 1 tip tip)")
    assert t.size == 7
    t = textio.parse_pset("(bin 0 3 nil (tip 5 0))")
    assert (t.mask, t.left, t.right.prefix, t.right.bitmap) == (3, None, 5, 0)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("(bin 1 x tip tip)", 1, 8),
        ("(bin -1 1 tip tip)", 1, 6),
        ("tip tip", 1, 5),
        ("(bin 1 2 tip tip", 1, 17),
        ("(bin 1 2\n  tip\n  leaf)", 3, 3),
        ("(bon 1 2 tip tip)", 1, 2),
        ("(bin 1 9223372036854775808 tip tip)", 1, 8),
        ("TIP", 1, 1),
    ],
)
def test_wb_parse_errors(text, line, column):
    with pytest.raises(textio.ParseError) as info:
        textio.parse_wbset(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert "line %d, column %d" % (line, column) in str(info.value)


@pytest.mark.parametrize(
    "text",
    ["(tip 0)", "(tip 0 1 2)", "(tip -1 1)", "(tip 0 18446744073709551616)", "(leaf 0 1)", "(bin 0 64 nil)", "Nil"],
)
def test_pt_parse_errors(text):
    with pytest.raises(textio.ParseError):
        textio.parse_pset(text)


def test_negative_elements_round_trip():
    rng = random.Random(3)
    xs = [rng.randint(-(2**63), 2**63 - 1) for _ in range(50)] + [-(2**63), 2**63 - 1]
    t = wb.from_list(xs)
    assert wb.to_asc_list(textio.parse_wbset(textio.format_wbset(t))) == sorted(xs)
