"""Text dumps of raw trees, for the ``check`` command.

Grammars (whitespace separated, case-sensitive)::

    wbset := "tip" | "(" "bin" SIZE ELEM wbset wbset ")"
    pset  := "nil" | "(" "tip" PREFIX BITMAP ")"
           | "(" "bin" PREFIX MASK pset pset ")"

The parsers build whatever tree the text describes, corrupt or not; judging
it is the job of :mod:`setforge.validity`.  Printing always produces the
canonical form: single spaces and decimal numbers.
"""

import re

from setforge import patricia, wbtree
from setforge.bitops import WORD_MASK

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

_TOKEN = re.compile(r"\s+|[()]|[^\s()]+")
_DECIMAL = re.compile(r"[+-]?[0-9]+\Z")
_UNSIGNED = re.compile(r"(?:[0-9]+|0[xX][0-9a-fA-F]+)\Z")


class ParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


class _Tokens:
    def __init__(self, text):
        self.items = []
        line, col = 1, 1
        for m in _TOKEN.finditer(text):
            tok = m.group()
            if not tok.isspace():
                self.items.append((tok, line, col))
            newlines = tok.count("\n")
            if newlines:
                line += newlines
                col = len(tok) - tok.rfind("\n")
            else:
                col += len(tok)
        self.end = (line, col)
        self.pos = 0

    def next(self, what):
        if self.pos >= len(self.items):
            raise ParseError("unexpected end of input, expected %s" % what, *self.end)
        tok = self.items[self.pos]
        self.pos += 1
        return tok

    def expect(self, literal):
        tok, line, col = self.next(repr(literal))
        if tok != literal:
            raise ParseError("expected %r, found %r" % (literal, tok), line, col)

    def finish(self):
        if self.pos < len(self.items):
            tok, line, col = self.items[self.pos]
            raise ParseError("trailing input %r" % tok, line, col)


def _signed(toks):
    tok, line, col = toks.next("an integer")
    if not _DECIMAL.match(tok):
        raise ParseError("expected a decimal integer, found %r" % tok, line, col)
    v = int(tok)
    if not INT64_MIN <= v <= INT64_MAX:
        raise ParseError("integer %s does not fit in 64 signed bits" % tok, line, col)
    return v


def _size(toks):
    tok, line, col = toks.next("a size")
    if not tok.isdigit():
        raise ParseError("expected a non-negative decimal size, found %r" % tok, line, col)
    return int(tok)


def _word(toks):
    tok, line, col = toks.next("a 64-bit word")
    if not _UNSIGNED.match(tok):
        raise ParseError("expected a decimal or 0x-hex word, found %r" % tok, line, col)
    v = int(tok, 0) if tok[:2].lower() == "0x" else int(tok)
    if v > WORD_MASK:
        raise ParseError("word %s does not fit in 64 bits" % tok, line, col)
    return v


def parse_wbset(text):
    toks = _Tokens(text)
    t = _wb(toks)
    toks.finish()
    return t


def _wb(toks):
    tok, line, col = toks.next("'tip' or '('")
    if tok == "tip":
        return None
    if tok != "(":
        raise ParseError("expected 'tip' or '(', found %r" % tok, line, col)
    toks.expect("bin")
    sz = _size(toks)
    x = _signed(toks)
    l = _wb(toks)
    r = _wb(toks)
    toks.expect(")")
    return wbtree.Bin(sz, x, l, r)


def format_wbset(t):
    parts = []
    _fmt_wb(t, parts)
    return "".join(parts)


def _fmt_wb(t, parts):
    if t is None:
        parts.append("tip")
        return
    parts.append("(bin %d %d " % (t.size, t.elem))
    _fmt_wb(t.left, parts)
    parts.append(" ")
    _fmt_wb(t.right, parts)
    parts.append(")")


def parse_pset(text):
    toks = _Tokens(text)
    t = _pt(toks)
    toks.finish()
    return t


def _pt(toks):
    tok, line, col = toks.next("'nil' or '('")
    if tok == "nil":
        return None
    if tok != "(":
        raise ParseError("expected 'nil' or '(', found %r" % tok, line, col)
    tok, line, col = toks.next("'tip' or 'bin'")
    if tok == "tip":
        p = _word(toks)
        bm = _word(toks)
        toks.expect(")")
        return patricia.Tip(p, bm)
    if tok == "bin":
        p = _word(toks)
        m = _word(toks)
        l = _pt(toks)
        r = _pt(toks)
        toks.expect(")")
        return patricia.Bin(p, m, l, r)
    raise ParseError("expected 'tip' or 'bin', found %r" % tok, line, col)


def format_pset(t):
    if t is None:
        return "nil"
    if type(t) is patricia.Tip:
        return "(tip %d %d)" % (t.prefix, t.bitmap)
    return "(bin %d %d %s %s)" % (t.prefix, t.mask, format_pset(t.left), format_pset(t.right))
