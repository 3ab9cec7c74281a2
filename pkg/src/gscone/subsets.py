"""Bitmask helpers for subsets of the ground set ``[n] = {1, ..., n}``.

Item ``i`` lives on bit ``i - 1``.  All iteration is in increasing integer
order of the mask, which is the canonical order used everywhere else.
"""

from itertools import combinations

from .errors import InputError, ParseError

MAX_ITEMS = 16


def full_mask(n):
    return (1 << n) - 1


def bit(i):
    """Mask of the singleton ``{i}`` (1-based item)."""
    return 1 << (i - 1)


def mask_of(items):
    m = 0
    for i in items:
        if i < 1:
            raise InputError("items are 1-based, got %r" % (i,))
        m |= 1 << (i - 1)
    return m


def items_of(mask):
    """Sorted tuple of the 1-based items in ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask):
    return bin(mask).count("1")


def check_mask(mask, n):
    if not isinstance(mask, int) or mask < 0 or mask >> n:
        raise InputError("mask %r is not a subset of [%d]" % (mask, n))
    return mask


def check_item(i, n):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise InputError("item %r is not in [%d]" % (i, n))
    return i


def subsets_of(mask):
    """All submasks of ``mask`` in increasing order."""
    subs = []
    s = 0
    while True:
        subs.append(s)
        if s == mask:
            break
        s = (s - mask) & mask
    return subs


def subsets_of_size(n, k):
    return [mask_of(c) for c in combinations(range(1, n + 1), k)]


def format_set(mask):
    return "{" + ",".join(str(i) for i in items_of(mask)) + "}"


def format_key(mask):
    """Bare comma form used as a JSON key: ``"1,2"``; the empty set is ``""``."""
    return ",".join(str(i) for i in items_of(mask))


def parse_items(text, n=None):
    """Parse ``"1,2,3"`` (optionally braced) into a mask."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    text = text.strip()
    if not text:
        return 0
    items = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ParseError("bad item %r in set %r" % (tok, text))
        items.append(int(tok))
    if len(set(items)) != len(items):
        raise ParseError("repeated item in set %r" % text)
    m = mask_of(items)
    if n is not None and m >> n:
        raise ParseError("set {%s} has items outside [%d]" % (text, n))
    return m


def permute_mask(mask, perm):
    """Image of ``mask`` under ``perm``, a tuple with ``perm[i-1]`` the new label of item ``i``."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[i] - 1)
        mask >>= 1
        i += 1
    return out
