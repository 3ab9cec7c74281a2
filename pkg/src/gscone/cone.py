"""Membership in cones of normalized matroid rank functions.

:func:`decompose` either writes a normalized valuation as a nonnegative
combination of cone generators or returns a Farkas certificate proving
that no such combination exists.  Both outcomes are verified exactly
before they are returned.
"""

import random
from itertools import permutations
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import InputError
from .lp import phase_one
from .matroid import (
    WeightedMatroid,
    generator_matroids,
    graphic_matroid,
    normalized_rank,
    normalized_rank_generators,
    rank_function,
    uniform_matroid,
)
from .subsets import bit, format_set, popcount
from .substitutes import check_gs
from .valuation import Valuation, _frac, inner_product, marginal, permute


@dataclass(frozen=True)
class ConeSpec:
    n: int
    generators: tuple  # ((name, Valuation), ...)

    def __post_init__(self):
        gens = tuple((str(name), g) for name, g in self.generators)
        seen = set()
        for name, g in gens:
            if g.n != self.n:
                raise InputError("generator %s has n=%d, expected %d" % (name, g.n, self.n))
            if not g.is_normalized():
                raise InputError("generator %s is not normalized" % name)
            if g in seen:
                raise InputError("generator %s duplicates an earlier one" % name)
            if check_gs(g):
                raise InputError("generator %s is not gross substitutes" % name)
            seen.add(g)
        object.__setattr__(self, "generators", gens)

    def __len__(self):
        return len(self.generators)

    @property
    def names(self):
        return [name for name, _ in self.generators]

    @property
    def valuations(self):
        return [g for _, g in self.generators]

    def combine(self, coefficients):
        """``sum_i c_i g_i`` for a coefficient sequence or ``{name: c}`` mapping."""
        if isinstance(coefficients, dict):
            unknown = set(coefficients) - set(self.names)
            if unknown:
                raise InputError("unknown generator names %s" % sorted(unknown))
            coefficients = [coefficients.get(name, 0) for name in self.names]
        if len(coefficients) != len(self.generators):
            raise InputError("need %d coefficients" % len(self.generators))
        total = Valuation.zero(self.n)
        for c, (_, g) in zip(coefficients, self.generators):
            c = _frac(c)
            if c:
                total = total + c * g
        return total


@dataclass(frozen=True)
class Decomposition:
    """Nonnegative coefficients over ``generators`` (a tuple of ``(name, Valuation)``)."""

    coefficients: tuple  # ((index, alpha), ...) with alpha > 0
    generators: tuple

    def value(self):
        n = self.generators[0][1].n if self.generators else 0
        total = Valuation.zero(n)
        for idx, alpha in self.coefficients:
            total = total + alpha * self.generators[idx][1]
        return total

    def terms(self):
        return [(self.generators[idx][0], alpha) for idx, alpha in self.coefficients]


@dataclass(frozen=True)
class FarkasCertificate:
    y: Valuation


@dataclass(frozen=True)
class DecompositionResult:
    decomposition: Decomposition = None
    certificate: FarkasCertificate = None
    pivots: int = 0

    def __post_init__(self):
        if (self.decomposition is None) == (self.certificate is None):
            raise ValueError("exactly one of decomposition / certificate must be set")

    @property
    def feasible(self):
        return self.decomposition is not None


def _integer_scaled(values):
    den = reduce(lcm, (x.denominator for x in values), 1)
    ints = [int(x * den) for x in values]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def verify_certificate(y, target, cone):
    """``<y, target> < 0`` and ``<y, g> >= 0`` for every generator, checked exactly."""
    if isinstance(y, FarkasCertificate):
        y = y.y
    if y.n != target.n or y.n != cone.n:
        raise InputError("dimension mismatch between certificate, target and cone")
    if inner_product(y, target) >= 0:
        return False
    return all(inner_product(y, g) >= 0 for _, g in cone.generators)


def decompose(target, cone):
    """Write ``target`` as a nonnegative combination of the cone generators, or certify it can't be."""
    if target.n != cone.n:
        raise InputError("target has n=%d but cone has n=%d" % (target.n, cone.n))
    if not target.is_normalized():
        raise InputError("target must be normalized (zero on the empty set and singletons)")
    gens = cone.valuations
    if not gens:
        if target.is_zero():
            return DecompositionResult(decomposition=Decomposition((), cone.generators))
        cert = FarkasCertificate(Valuation(cone.n, _integer_scaled([-x for x in target.values])))
        return DecompositionResult(certificate=cert)
    A = [[g.values[S] for g in gens] for S in range(1 << cone.n)]
    res = phase_one(A, list(target.values))
    if res.feasible:
        coeffs = tuple((i, a) for i, a in enumerate(res.x) if a != 0)
        dec = Decomposition(coeffs, cone.generators)
        if dec.value() != target or any(a < 0 for _, a in coeffs):
            raise AssertionError("simplex returned a decomposition that does not verify")
        return DecompositionResult(decomposition=dec, pivots=res.pivots)
    # every generator and the target vanish on sets of size <= 1, so those
    # coordinates of the ray are free; zero them for a cleaner certificate
    ray = [x if popcount(S) >= 2 else Fraction(0) for S, x in enumerate(res.y)]
    cert = FarkasCertificate(Valuation(cone.n, _integer_scaled(ray)))
    if not verify_certificate(cert, target, cone):
        raise AssertionError("simplex returned a Farkas ray that does not verify")
    return DecompositionResult(certificate=cert, pivots=res.pivots)


def matroid_cone(n):
    """All distinct nonzero normalized matroid rank functions on ``[n]``."""
    gens = normalized_rank_generators(n)
    mats = generator_matroids(n)
    names = ["M" + "".join(format_set(B) for B in m.bases) for m in mats]
    return ConeSpec(n, tuple(zip(names, gens)))


# -- weighted matroids ------------------------------------------------------


def _weight_order(wm):
    # heaviest first; ties by item index
    return sorted(range(1, wm.matroid.n + 1), key=lambda i: (-wm.weights[i - 1], i))


def weighted_rank_valuation(wm):
    """Weight of a maximum-weight independent subset of each ``S`` (greedy)."""
    if not isinstance(wm, WeightedMatroid):
        raise InputError("expected a WeightedMatroid")
    order = _weight_order(wm)
    m = wm.matroid

    def val(S):
        chosen = 0
        total = Fraction(0)
        for i in order:
            if S & bit(i) and m.is_independent(chosen | bit(i)):
                chosen |= bit(i)
                total += wm.weights[i - 1]
        return total

    return Valuation.from_function(m.n, val)


def weighted_rank_decompose(wm):
    """Telescoping decomposition over rank functions of heaviest-prefix restrictions.

    With items relabeled so that ``w_1 >= ... >= w_n`` and ``w_{n+1} = 0``,
    the coefficient of ``rank(M restricted to the j heaviest items)`` is
    ``w_j - w_{j+1}``.
    """
    m = wm.matroid
    order = _weight_order(wm)
    w = [wm.weights[i - 1] for i in order] + [Fraction(0)]
    gens = []
    coeffs = []
    prefix = 0
    for j, i in enumerate(order):
        prefix |= bit(i)
        restricted = m.restrict(prefix)
        gens.append(("r[%s]" % format_set(prefix), rank_function(restricted)))
        gap = w[j] - w[j + 1]
        if gap:
            coeffs.append((j, gap))
    return Decomposition(tuple(coeffs), tuple(gens))


# -- small-n cone catalogs ----------------------------------------------------

G4_CASES = ("shallow", "deep1", "deep2", "deep3a", "deep3b", "deep3c")

# items a, b, c, d are 1, 2, 3, 4; graphs as edge lists indexed by item
_PARALLEL_AB = ((0, 1), (0, 1), (1, 2), (2, 3))
_PARALLEL_CD_TRIANGLE = ((0, 2), (1, 2), (0, 1), (0, 1))
_PARALLEL_BCD = ((1, 2), (0, 1), (0, 1), (0, 1))
_PARALLEL_CD_PENDANTS = ((0, 3), (1, 2), (0, 1), (0, 1))


def _graphic(edges):
    return normalized_rank(graphic_matroid(len(edges), edges))


def _uniform(n, k):
    return normalized_rank(uniform_matroid(n, k))


def g2_generators():
    return ConeSpec(2, (("x", _uniform(2, 1)),))


def g3_generators():
    """Cone for the empty-set tree with ``{a, b}`` as the inner node."""
    return ConeSpec(
        3,
        (
            ("x", _uniform(3, 1)),
            ("z", _uniform(3, 2)),
            ("y", _graphic(((0, 1), (0, 1), (1, 2)))),
        ),
    )


def g4_generators(case):
    """Generators of one of the six four-item cones, named by their coordinate."""
    if case not in G4_CASES:
        raise InputError("unknown case %r; expected one of %s" % (case, ", ".join(G4_CASES)))
    x = ("x", _uniform(4, 1))
    w = ("w", _uniform(4, 2))
    t = ("t", _uniform(4, 3))
    if case == "shallow":
        gens = (
            x,
            ("y", _graphic(_PARALLEL_AB)),
            ("z", _graphic(_PARALLEL_CD_TRIANGLE)),
            w,
            ("q", _graphic(((0, 1), (0, 2), (1, 3), (1, 2)))),
            t,
        )
    elif case == "deep3c":
        gens = (
            x,
            ("y", _graphic(_PARALLEL_BCD)),
            ("q", _graphic(_PARALLEL_CD_TRIANGLE)),
            w,
            ("s", _graphic(_PARALLEL_CD_PENDANTS)),
            t,
        )
    else:
        z = _PARALLEL_CD_PENDANTS if case in ("deep1", "deep2") else _PARALLEL_CD_TRIANGLE
        # each q-graph is a triangle on three items with the fourth item pendant
        q = {
            "deep1": ((1, 3), (0, 2), (1, 2), (0, 1)),  # triangle b, c, d
            "deep2": ((0, 2), (1, 3), (1, 2), (0, 1)),  # triangle a, c, d
            "deep3a": ((0, 2), (1, 2), (1, 3), (0, 1)),  # triangle a, b, d
            "deep3b": ((0, 2), (1, 2), (0, 1), (1, 3)),  # triangle a, b, c
        }[case]
        gens = (x, ("y", _graphic(_PARALLEL_BCD)), ("z", _graphic(z)), w, ("q", _graphic(q)), t)
    return ConeSpec(4, gens)


def _cases(n):
    if n == 2:
        return [g2_generators()]
    if n == 3:
        return [g3_generators()]
    if n == 4:
        return [g4_generators(c) for c in G4_CASES]
    raise InputError("GS samplers exist for n in {2, 3, 4}, got %r" % (n,))


def sample_gs(n, seed, count):
    """``count`` random normalized GS valuations drawn from the small-n cones.

    Each draw picks a cone case and an item relabeling uniformly, then
    coefficients ``a / b`` with ``a`` uniform in ``[0, 5]`` and ``b`` in ``[1, 3]``.
    """
    cases = _cases(n)
    rng = random.Random(seed)
    perms = _all_perms(n)
    out = []
    for _ in range(count):
        cone = rng.choice(cases)
        perm = rng.choice(perms)
        coeffs = [Fraction(rng.randint(0, 5), rng.randint(1, 3)) for _ in cone.generators]
        v = permute(cone.combine(coeffs), perm)
        if check_gs(v):
            raise AssertionError("sampler produced a non-GS valuation")
        out.append(v)
    return out


def _all_perms(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def is_strong_quotient(v, w):
    """``v(S | T) <= w(S | T)`` for every pair of subsets."""
    if v.n != w.n:
        raise InputError("dimension mismatch: n=%d vs n=%d" % (v.n, w.n))
    rng = range(1 << v.n)
    return all(marginal(v, S, T) <= marginal(w, S, T) for S in rng for T in rng)
