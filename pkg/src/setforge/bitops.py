"""Word-level helpers for the Patricia tree.

Every value is treated as an unsigned 64-bit word.  Preconditions are
checked with ``assert`` so that ``python -O`` strips them from the hot path;
callers are expected to establish them structurally.
"""

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1
SUFFIX_BIT_MASK = WORD_BITS - 1
PREFIX_BIT_MASK = WORD_MASK ^ SUFFIX_BIT_MASK


def is_word(x):
    return isinstance(x, int) and 0 <= x <= WORD_MASK


def is_power_of_two(x):
    return x > 0 and x & (x - 1) == 0


def lowest_bit_mask(x):
    """Return ``2**j`` for the least significant set bit ``j`` of ``x``."""
    assert 0 < x <= WORD_MASK, "lowest_bit_mask of zero"
    return x & -x


def highest_bit_mask(x):
    """Return ``2**floor(log2(x))``."""
    assert 0 < x <= WORD_MASK, "highest_bit_mask of zero"
    return 1 << (x.bit_length() - 1)


def index_of_only_bit(x):
    """Index of the single set bit of ``x``, i.e. its integer log2."""
    assert is_power_of_two(x) and x <= WORD_MASK, "expected exactly one set bit"
    return x.bit_length() - 1


def popcount(x):
    return x.bit_count()


def mask(x, m):
    """Keep only the bits of ``x`` strictly above the single bit ``m``."""
    assert is_power_of_two(m) and m <= WORD_MASK, "mask bit must be a power of two"
    return x & (WORD_MASK ^ ((m << 1) - 1))


def zero(x, m):
    """True iff the mask bit ``m`` is clear in ``x``."""
    assert is_power_of_two(m) and m <= WORD_MASK, "mask bit must be a power of two"
    return x & m == 0


def nomatch(x, p, m):
    """True iff ``x`` does not share the prefix ``p`` above mask bit ``m``."""
    assert mask(p, m) == p, "prefix has bits at or below the mask bit"
    return mask(x, m) != p


def match(x, p, m):
    return not nomatch(x, p, m)


def shorter(m1, m2):
    """True iff mask ``m1`` belongs to a shorter prefix than ``m2``."""
    return m1 > m2


def branch_mask(p1, p2):
    """The highest bit at which ``p1`` and ``p2`` differ."""
    assert p1 != p2, "branch_mask of equal prefixes"
    return highest_bit_mask(p1 ^ p2)


def prefix_of(x):
    return x & PREFIX_BIT_MASK


def suffix_of(x):
    return x & SUFFIX_BIT_MASK


def bitmap_of_suffix(s):
    return 1 << s


def bitmap_of(x):
    return 1 << (x & SUFFIX_BIT_MASK)


def clear_bits(x, y):
    """``x AND NOT y`` written without complement, as ``x XOR (x AND y)``.

    The two forms agree on every pair of words; the xor form never builds a
    negative intermediate, which keeps the arithmetic inside the naturals.
    """
    return x ^ (x & y)


def rev_word(x):
    """Reverse the 64 bits of ``x`` with the classic shift-and-mask ladder."""
    x = ((x >> 1) & 0x5555555555555555) | ((x & 0x5555555555555555) << 1)
    x = ((x >> 2) & 0x3333333333333333) | ((x & 0x3333333333333333) << 2)
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0F) | ((x & 0x0F0F0F0F0F0F0F0F) << 4)
    x = ((x >> 8) & 0x00FF00FF00FF00FF) | ((x & 0x00FF00FF00FF00FF) << 8)
    x = ((x >> 16) & 0x0000FFFF0000FFFF) | ((x & 0x0000FFFF0000FFFF) << 16)
    return ((x >> 32) | (x << 32)) & WORD_MASK
