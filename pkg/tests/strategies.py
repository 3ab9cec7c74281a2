"""Hypothesis strategies and small brute-force oracles shared by the tests."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from gscone.valuation import Valuation

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3))


@st.composite
def valuations(draw, n=None, min_n=0, max_n=4):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    vals = draw(st.lists(small_fracs, min_size=1 << n, max_size=1 << n))
    return Valuation(n, vals)


@st.composite
def valuation_pairs(draw, min_n=0, max_n=4):
    n = draw(st.integers(min_n, max_n))
    return draw(valuations(n=n)), draw(valuations(n=n))


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(list(range(1, n + 1)))))


def naive_value(v, items):
    """Look up ``v`` at a set of items without any bit tricks in the caller."""
    mask = 0
    for i in items:
        mask |= 1 << (i - 1)
    return v.values[mask]


def naive_d2(v, i, j, S):
    S = set(S)
    return (
        naive_value(v, S | {i, j}) - naive_value(v, S | {i})
        - naive_value(v, S | {j}) + naive_value(v, S)
    )


def naive_is_gs(v):
    """GS straight from the discrete-derivative definition, on item sets."""
    items = range(1, v.n + 1)
    for r in range(v.n + 1):
        for S in combinations(items, r):
            rest = [x for x in items if x not in S]
            for i, j in combinations(rest, 2):
                if naive_d2(v, i, j, S) > 0:
                    return False
            for a, b, c in combinations(rest, 3):
                for i, j, k in ((a, b, c), (a, c, b), (b, c, a)):
                    if naive_d2(v, i, j, S) > max(naive_d2(v, i, k, S), naive_d2(v, j, k, S)):
                        return False
    return True
