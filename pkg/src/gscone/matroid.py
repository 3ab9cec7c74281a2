"""Matroids on small ground sets, given by their bases.

Includes exhaustive enumeration of all labeled matroids for ``n <= 5``
(``n = 6`` works but is slow), isomorphism reduction by brute-force
canonical labeling, and the rank functions used as cone generators.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .errors import InputError
from .subsets import bit, full_mask, items_of, permute_mask, popcount, subsets_of_size
from .valuation import Valuation, d1


def check_basis_exchange(n, family):
    """True iff ``family`` satisfies the basis exchange axiom.

    For every ordered pair ``A, B`` and ``x in A - B`` some ``y in B - A``
    must make ``A - x + y`` a member.
    """
    fam = set(family)
    if not fam:
        raise InputError("basis family must be nonempty")
    sizes = {popcount(B) for B in fam}
    if len(sizes) != 1:
        raise InputError("bases of mixed cardinality %s" % sorted(sizes))
    for B in fam:
        if B >> n:
            raise InputError("basis outside [%d]" % n)
    for A in fam:
        for B in fam:
            diff_a = A & ~B
            diff_b = B & ~A
            for x in items_of(diff_a):
                base = A & ~bit(x)
                if not any((base | bit(y)) in fam for y in items_of(diff_b)):
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: tuple
    rank: int = field(init=False)

    def __init__(self, n, bases):
        fam = tuple(sorted(set(bases)))
        if not check_basis_exchange(n, fam):
            raise InputError("basis family violates the exchange axiom")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bases", fam)
        object.__setattr__(self, "rank", popcount(fam[0]))

    def rank_of(self, S):
        return max(popcount(S & B) for B in self.bases)

    def is_independent(self, S):
        return any(S & B == S for B in self.bases)

    def restrict(self, X):
        """Restriction to the items in mask ``X`` (other items become loops)."""
        r = self.rank_of(X)
        return Matroid(self.n, {B & X for B in self.bases if popcount(B & X) == r})

    def permuted(self, perm):
        return Matroid(self.n, [permute_mask(B, perm) for B in self.bases])


@dataclass(frozen=True)
class WeightedMatroid:
    matroid: Matroid
    weights: tuple

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if len(w) != self.matroid.n:
            raise InputError("need %d weights, got %d" % (self.matroid.n, len(w)))
        if any(x < 0 for x in w):
            raise InputError("weights must be nonnegative")
        object.__setattr__(self, "weights", w)


def uniform_matroid(n, k):
    return Matroid(n, subsets_of_size(n, k))


def free_matroid(n):
    return Matroid(n, [full_mask(n)])


def graphic_matroid(n, edges):
    """Cycle matroid of a multigraph; ``edges[i-1] = (u, w)`` is item ``i``."""
    if len(edges) != n:
        raise InputError("need one edge per item")

    def acyclic(S):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for i in items_of(S):
            u, w = edges[i - 1]
            ru, rw = find(u), find(w)
            if ru == rw:
                return False
            parent[ru] = rw
        return True

    indep = [S for S in range(1 << n) if acyclic(S)]
    r = max(popcount(S) for S in indep)
    return Matroid(n, [S for S in indep if popcount(S) == r])


def rank_function(m):
    return Valuation.from_function(m.n, m.rank_of)


def normalized_rank(m):
    """``r(S) - sum_{i in S} r({i})``; marginals lie in ``{-1, 0}``."""
    single = [m.rank_of(bit(i)) for i in range(1, m.n + 1)]
    return Valuation.from_function(
        m.n, lambda S: m.rank_of(S) - sum(single[i - 1] for i in items_of(S))
    )


def is_matroid_rank_valuation(v):
    """True iff ``v`` is the rank function of some matroid.

    Checks ``v({}) = 0``, first marginals in ``{0, 1}`` and gross substitutes.
    """
    from .substitutes import check_gs

    if v.values[0] != 0:
        return False
    for S in range(1 << v.n):
        for i in range(1, v.n + 1):
            if not S & bit(i) and d1(v, i, S) not in (0, 1):
                return False
    return not check_gs(v)


def matroid_from_rank(v):
    """Recover the matroid whose rank function is ``v`` (assumed valid)."""
    r = v.values[full_mask(v.n)]
    return Matroid(v.n, [S for S in range(1 << v.n) if popcount(S) == r and v.values[S] == r])


def canonical_form(m):
    """Lexicographically least sorted basis tuple over all item relabelings."""
    return min(
        tuple(sorted(permute_mask(B, p) for B in m.bases))
        for p in permutations(range(1, m.n + 1))
    )


@dataclass(frozen=True)
class MatroidCatalog:
    n: int
    entries: tuple
    iso_class: tuple
    canonical_forms: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@lru_cache(maxsize=None)
def enumerate_matroids(n):
    """Every labeled matroid on ``[n]``, sorted by (rank, basis tuple)."""
    if not isinstance(n, int) or not 0 <= n <= 6:
        raise InputError("enumeration supports 0 <= n <= 6, got %r" % (n,))
    entries = []
    for r in range(n + 1):
        cands = subsets_of_size(n, r)
        k = len(cands)
        for sel in range(1, 1 << k):
            fam = [cands[t] for t in range(k) if sel >> t & 1]
            if check_basis_exchange(n, fam):
                entries.append(Matroid(n, fam))
    entries.sort(key=lambda m: (m.rank, m.bases))
    forms = {}
    iso = []
    for m in entries:
        cf = canonical_form(m)
        iso.append(forms.setdefault(cf, len(forms)))
    return MatroidCatalog(n, tuple(entries), tuple(iso), tuple(forms))


def isomorphism_classes(catalog):
    return len(catalog.canonical_forms)


@lru_cache(maxsize=None)
def normalized_rank_generators(n):
    """Distinct nonzero normalized rank functions of all matroids on ``[n]``."""
    if not 0 <= n <= 5:
        raise InputError("generators are available for n <= 5")
    seen = {}
    for m in enumerate_matroids(n):
        g = normalized_rank(m)
        if not g.is_zero() and g not in seen:
            seen[g] = m
    return tuple(seen)


def generator_matroids(n):
    """One representative matroid per entry of :func:`normalized_rank_generators`."""
    gens = normalized_rank_generators(n)
    rep = {}
    for m in enumerate_matroids(n):
        g = normalized_rank(m)
        if not g.is_zero():
            rep.setdefault(g, m)
    return tuple(rep[g] for g in gens)
