"""Gross substitutes and submodularity tests plus the demand-side characterizations.

:func:`check_gs` is the discrete-derivative test.  :func:`demand`,
:func:`greedy` and :func:`check_local_global` are the economic
characterizations, used as cross-checks against it.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InputError
from .subsets import bit, format_set, full_mask, items_of
from .valuation import Valuation, _frac


@dataclass(frozen=True)
class GSViolation:
    S: int
    i: int
    j: int
    k: object  # None for nonpositivity violations
    lhs: Fraction
    rhs: Fraction
    kind: str  # "triple-inequality" | "nonpositivity"

    def describe(self):
        if self.kind == "nonpositivity":
            return "S=%s: d2_{%d,%d} = %s > 0" % (format_set(self.S), self.i, self.j, self.lhs)
        return "S=%s: d2_{%d,%d} = %s > max(d2_{%d,%d}, d2_{%d,%d}) = %s" % (
            format_set(self.S), self.i, self.j, self.lhs,
            self.i, self.k, self.j, self.k, self.rhs,
        )


class GSViolations(list):
    """List of violations, plus how many (S, triple) instances were examined."""

    def __init__(self, items=(), triples_checked=0, pairs_checked=0):
        super().__init__(items)
        self.triples_checked = triples_checked
        self.pairs_checked = pairs_checked


def _second_derivatives(v):
    """``{(S, i, j): d2}`` for all ``i < j`` outside ``S``."""
    vals = v.values
    out = {}
    for S in range(1 << v.n):
        rest = items_of(full_mask(v.n) & ~S)
        for i, j in combinations(rest, 2):
            bi, bj = bit(i), bit(j)
            out[S, i, j] = vals[S | bi | bj] - vals[S | bi] - vals[S | bj] + vals[S]
    return out


def check_gs(v):
    """All gross substitutes violations of ``v`` (empty iff ``v`` is GS).

    For every ``S`` and every pair ``i, j`` outside it the second derivative
    must be nonpositive; for every triple the largest of the three second
    derivatives must be attained at least twice.
    """
    dd = _second_derivatives(v)
    found = []
    triples = 0
    for S in range(1 << v.n):
        rest = items_of(full_mask(v.n) & ~S)
        for i, j in combinations(rest, 2):
            if dd[S, i, j] > 0:
                found.append(GSViolation(S, i, j, None, dd[S, i, j], Fraction(0), "nonpositivity"))
        for a, b, c in combinations(rest, 3):
            triples += 1
            pairs = {(a, b): dd[S, a, b], (a, c): dd[S, a, c], (b, c): dd[S, b, c]}
            for (i, j), x in pairs.items():
                (k,) = {a, b, c} - {i, j}
                rhs = max(pairs[tuple(sorted((i, k)))], pairs[tuple(sorted((j, k)))])
                if x > rhs:
                    found.append(GSViolation(S, i, j, k, x, rhs, "triple-inequality"))
    return GSViolations(found, triples_checked=triples, pairs_checked=len(dd))


def is_gs(v):
    return not check_gs(v)


def is_gs_min_twice(v):
    """Same test phrased on ``Delta = -d2``: all entries >= 0 and in every
    triple the minimum of the three entries is attained at least twice."""
    dd = _second_derivatives(v)
    if any(x > 0 for x in dd.values()):
        return False
    for S in range(1 << v.n):
        rest = items_of(full_mask(v.n) & ~S)
        for a, b, c in combinations(rest, 3):
            vals = sorted((-dd[S, a, b], -dd[S, a, c], -dd[S, b, c]))
            if vals[0] != vals[1]:
                return False
    return True


def check_submodular(v):
    return all(x <= 0 for x in _second_derivatives(v).values())


def priced(v, p):
    """``v_p(S) = v(S) - sum_{i in S} p_i``."""
    p = tuple(_frac(x) for x in p)
    if len(p) != v.n:
        raise InputError("price vector has length %d, expected %d" % (len(p), v.n))
    return Valuation.from_function(
        v.n, lambda S: v.values[S] - sum((p[i - 1] for i in items_of(S)), Fraction(0))
    )


@dataclass(frozen=True)
class DemandResult:
    max_value: Fraction
    demanded: frozenset


def demand(v, p):
    """All utility-maximizing bundles at prices ``p``, by exhaustive search."""
    vp = priced(v, p).values
    best = max(vp)
    return DemandResult(best, frozenset(S for S, x in enumerate(vp) if x == best))


def greedy(v, p):
    """Add the item with largest strictly positive marginal until none is left.

    Ties go to the smallest item index.
    """
    vp = priced(v, p).values
    S = 0
    while True:
        best_i, best_gain = None, Fraction(0)
        for i in range(1, v.n + 1):
            b = bit(i)
            if S & b:
                continue
            gain = vp[S | b] - vp[S]
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_i is None:
            return S
        S |= bit(best_i)


def local_maxima(v, p):
    """Bundles that no single-item insertion, removal or exchange improves."""
    vp = priced(v, p).values
    n = v.n
    out = []
    for S in range(1 << n):
        x = vp[S]
        inside = [bit(i) for i in range(1, n + 1) if S & bit(i)]
        outside = [bit(i) for i in range(1, n + 1) if not S & bit(i)]
        if any(vp[S | a] > x for a in outside):
            continue
        if any(vp[S & ~d] > x for d in inside):
            continue
        if any(vp[(S | a) & ~d] > x for a in outside for d in inside):
            continue
        out.append(S)
    return out


def check_local_global(v, p):
    """True iff every local maximum of ``v_p`` is a global maximum."""
    best = demand(v, p).max_value
    vp = priced(v, p).values
    return all(vp[S] == best for S in local_maxima(v, p))
