"""Exact set functions on ``2^[n]`` and their discrete calculus.

A :class:`Valuation` stores one :class:`~fractions.Fraction` per subset,
indexed by bitmask.  Everything here is exact; there is no floating point
anywhere in the package.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .subsets import (
    MAX_ITEMS,
    bit,
    check_item,
    check_mask,
    format_set,
    full_mask,
    items_of,
    permute_mask,
)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InputError("floats are not accepted; pass int, Fraction or 'p/q' string")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("not a rational number: %r" % (x,)) from exc


@dataclass(frozen=True, eq=True)
class Valuation:
    """A set function ``v : 2^[n] -> Q`` stored densely by mask."""

    n: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_ITEMS:
            raise InputError("n must be an integer in [0, %d], got %r" % (MAX_ITEMS, self.n))
        vals = tuple(_frac(x) for x in self.values)
        if len(vals) != 1 << self.n:
            raise InputError("expected %d values for n=%d, got %d" % (1 << self.n, self.n, len(vals)))
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, n):
        return cls(n, (Fraction(0),) * (1 << n))

    @classmethod
    def from_function(cls, n, func):
        """Tabulate ``func(mask)`` over every subset."""
        return cls(n, [func(S) for S in range(1 << n)])

    @classmethod
    def from_dict(cls, n, table):
        """Build from ``{mask: value}``; unlisted subsets are 0."""
        vals = [Fraction(0)] * (1 << n)
        for S, x in table.items():
            check_mask(S, n)
            vals[S] = _frac(x)
        return cls(n, vals)

    @classmethod
    def additive(cls, weights, constant=0):
        n = len(weights)
        w = [_frac(x) for x in weights]
        c = _frac(constant)
        return cls.from_function(n, lambda S: c + sum((w[i - 1] for i in items_of(S)), Fraction(0)))

    def __getitem__(self, S):
        return self.values[check_mask(S, self.n)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def _same_n(self, other):
        if not isinstance(other, Valuation):
            return NotImplemented
        if other.n != self.n:
            raise InputError("dimension mismatch: n=%d vs n=%d" % (self.n, other.n))
        return True

    def __add__(self, other):
        if self._same_n(other) is NotImplemented:
            return NotImplemented
        return Valuation(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        if self._same_n(other) is NotImplemented:
            return NotImplemented
        return Valuation(self.n, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return Valuation(self.n, [-a for a in self.values])

    def __mul__(self, scalar):
        if isinstance(scalar, Valuation):
            return NotImplemented
        c = _frac(scalar)
        return Valuation(self.n, [c * a for a in self.values])

    __rmul__ = __mul__

    def is_normalized(self):
        return self.values[0] == 0 and all(self.values[bit(i)] == 0 for i in range(1, self.n + 1))

    def is_zero(self):
        return not any(self.values)

    def __repr__(self):
        nz = ", ".join(
            "%s: %s" % (format_set(S), x) for S, x in enumerate(self.values) if x != 0
        )
        return "Valuation(n=%d, {%s})" % (self.n, nz)


@dataclass(frozen=True)
class AffineTransform:
    """``S -> v(S) + sum_{i in S} p_i + c`` (prices are added, not subtracted)."""

    p: tuple
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(_frac(x) for x in self.p))
        object.__setattr__(self, "c", _frac(self.c))

    @classmethod
    def identity(cls, n):
        return cls((0,) * n, 0)


def value(v, S):
    return v[S]


def marginal(v, S, T):
    """``v(S | T) = v(S ∪ T) - v(T)``."""
    check_mask(S, v.n)
    check_mask(T, v.n)
    return v.values[S | T] - v.values[T]


def d1(v, i, S):
    """First discrete derivative ``v(S + i) - v(S)``; requires ``i`` not in ``S``."""
    check_item(i, v.n)
    check_mask(S, v.n)
    b = bit(i)
    if S & b:
        raise InputError("item %d is already in %s" % (i, format_set(S)))
    return v.values[S | b] - v.values[S]


def d2(v, i, j, S):
    """Second discrete derivative ``v(S+ij) - v(S+i) - v(S+j) + v(S)``."""
    check_item(i, v.n)
    check_item(j, v.n)
    check_mask(S, v.n)
    if i == j:
        raise InputError("second derivative needs distinct items, got %d twice" % i)
    bi, bj = bit(i), bit(j)
    if S & (bi | bj):
        raise InputError("items %d, %d must lie outside %s" % (i, j, format_set(S)))
    vals = v.values
    return vals[S | bi | bj] - vals[S | bi] - vals[S | bj] + vals[S]


def apply_affine(v, t):
    if len(t.p) != v.n:
        raise InputError("transform has %d prices for n=%d" % (len(t.p), v.n))
    p = t.p
    return Valuation.from_function(
        v.n, lambda S: v.values[S] + t.c + sum((p[i - 1] for i in items_of(S)), Fraction(0))
    )


def normalize(v):
    """Return ``(v0, t)`` with ``v0`` normalized and ``apply_affine(v0, t) == v``."""
    c = v.values[0]
    p = tuple(v.values[bit(i)] - c for i in range(1, v.n + 1))
    v0 = Valuation.from_function(
        v.n, lambda S: v.values[S] - c - sum((p[i - 1] for i in items_of(S)), Fraction(0))
    )
    return v0, AffineTransform(p, c)


def inner_product(a, b):
    if a.n != b.n:
        raise InputError("dimension mismatch: n=%d vs n=%d" % (a.n, b.n))
    return sum((x * y for x, y in zip(a.values, b.values)), Fraction(0))


def item_grouping(v, partition):
    """Merge items: the result's item ``t`` is the block ``partition[t-1]``."""
    blocks = [check_mask(B, v.n) for B in partition]
    seen = 0
    for B in blocks:
        if B == 0:
            raise InputError("partition blocks must be nonempty")
        if seen & B:
            raise InputError("partition blocks overlap")
        seen |= B
    if seen != full_mask(v.n):
        raise InputError("partition does not cover [%d]" % v.n)

    def grouped(T):
        U = 0
        for t in items_of(T):
            U |= blocks[t - 1]
        return v.values[U]

    return Valuation.from_function(len(blocks), grouped)


def permute(v, perm):
    """Relabel items: item ``i`` becomes ``perm[i-1]``, i.e. ``w(pi(S)) = v(S)``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(1, v.n + 1)):
        raise InputError("%r is not a permutation of [%d]" % (perm, v.n))
    vals = [None] * (1 << v.n)
    for S, x in enumerate(v.values):
        vals[permute_mask(S, perm)] = x
    return Valuation(v.n, vals)
