"""Substitution trees: the ``Delta`` tensor, minimal trees, concordance, integration.

For a gross substitutes valuation ``v`` and a set ``S`` the symbols
``Delta^S_ij = -d2(v, i, j, S)`` over the leaves ``[n] - S`` form an
ultrametric-like matrix: in every triple the minimum is attained twice.
Such a matrix is the lowest-common-ancestor labeling of a rooted tree.
Trees are stored as laminar families of internal-node leaf sets.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConcordanceError, InputError, IntegrabilityError, NotGSError
from .subsets import bit, format_key, format_set, full_mask, items_of, mask_of, popcount
from .substitutes import check_gs
from .valuation import Valuation, _frac


def _pair(i, j):
    return bit(i) | bit(j)


@dataclass(frozen=True)
class DeltaTensor:
    """``delta[(S, pair_mask)]`` for every ``S`` and unordered pair outside ``S``."""

    n: int
    delta: dict

    def __post_init__(self):
        expected = {
            (S, _pair(i, j))
            for S in range(1 << self.n)
            for i, j in combinations(items_of(full_mask(self.n) & ~S), 2)
        }
        if set(self.delta) != expected:
            raise InputError("tensor entries must cover exactly every (S, {i,j}) with i, j not in S")
        object.__setattr__(self, "delta", {k: _frac(x) for k, x in self.delta.items()})

    @classmethod
    def from_function(cls, n, func):
        """Tabulate ``func(S, i, j)`` (called with ``i < j``)."""
        table = {}
        for S in range(1 << n):
            for i, j in combinations(items_of(full_mask(n) & ~S), 2):
                table[S, _pair(i, j)] = func(S, i, j)
        return cls(n, table)

    def get(self, S, i, j):
        try:
            return self.delta[S, _pair(i, j)]
        except KeyError:
            raise InputError(
                "no entry for S=%s, pair {%d,%d}" % (format_set(S), i, j)
            ) from None

    def replace(self, S, i, j, value):
        table = dict(self.delta)
        key = (S, _pair(i, j))
        if key not in table:
            raise InputError("no entry for S=%s, pair {%d,%d}" % (format_set(S), i, j))
        table[key] = value
        return DeltaTensor(self.n, table)

    def __eq__(self, other):
        return isinstance(other, DeltaTensor) and self.n == other.n and self.delta == other.delta

    __hash__ = None


def delta_tensor(v):
    vals = v.values

    def entry(S, i, j):
        bi, bj = bit(i), bit(j)
        return -(vals[S | bi | bj] - vals[S | bi] - vals[S | bj] + vals[S])

    return DeltaTensor.from_function(v.n, entry)


@dataclass(frozen=True)
class LabeledTree:
    """Minimal substitution tree over the leaves ``ground``.

    ``nodes`` holds ``(leaf_set_mask, label)`` for every internal node, root
    first and then in increasing mask order.
    """

    n: int
    ground: int
    nodes: tuple

    @property
    def S(self):
        return full_mask(self.n) & ~self.ground

    @property
    def family(self):
        return frozenset(X for X, _ in self.nodes)

    def label_of(self, X):
        for Y, lab in self.nodes:
            if Y == X:
                return lab
        raise KeyError(format_set(X))

    def lca_label(self, i, j):
        """Label of the smallest node containing both leaves."""
        p = _pair(i, j)
        best = None
        for X, lab in self.nodes:
            if X & p == p and (best is None or popcount(X) < popcount(best[0])):
                best = (X, lab)
        if best is None:
            raise InputError("leaves %d, %d are not in this tree" % (i, j))
        return best[1]

    def parent(self, X):
        """Smallest node strictly containing ``X`` (``None`` for the root)."""
        best = None
        for Y, _ in self.nodes:
            if Y != X and Y & X == X and (best is None or popcount(Y) < popcount(best)):
                best = Y
        return best

    def to_json(self):
        return {
            "S": format_key(self.S),
            "nodes": [{"set": format_key(X), "label": str(lab)} for X, lab in self.nodes],
        }


def _check_triangle(d, S, leaves):
    for a, b, c in combinations(leaves, 3):
        vals = sorted(
            ((d.get(S, a, b), (a, b, c)), (d.get(S, a, c), (a, c, b)), (d.get(S, b, c), (b, c, a))),
            key=lambda t: t[0],
        )
        if vals[0][0] != vals[1][0]:
            raise NotGSError(
                "S=%s: minimum of Delta over {%d,%d,%d} is not attained twice" % (format_set(S), a, b, c),
                S=S,
                triple=(a, b, c),
            )
    for i, j in combinations(leaves, 2):
        if d.get(S, i, j) < 0:
            raise NotGSError(
                "S=%s: Delta_{%d,%d} = %s < 0" % (format_set(S), i, j, d.get(S, i, j)),
                S=S,
                triple=(i, j),
            )


def _components(leaves, joined):
    comp = {x: {x} for x in leaves}
    for i, j in combinations(leaves, 2):
        if joined(i, j) and comp[i] is not comp[j]:
            merged = comp[i] | comp[j]
            for x in merged:
                comp[x] = merged
    seen = []
    for x in leaves:
        if comp[x] not in seen:
            seen.append(comp[x])
    return [tuple(sorted(c)) for c in seen]


def extract_tree(d, S):
    """Minimal labeled tree whose lca labels reproduce ``Delta^S``.

    Each node's label is the smallest entry among its leaves; its children
    are the connected components of the graph joining leaves whose entry
    exceeds that label.
    """
    ground = full_mask(d.n) & ~S
    leaves = items_of(ground)
    if len(leaves) < 2:
        raise InputError("S=%s leaves fewer than two items" % format_set(S))
    _check_triangle(d, S, leaves)
    nodes = []

    def build(group):
        label = min(d.get(S, i, j) for i, j in combinations(group, 2))
        nodes.append((mask_of(group), label))
        for comp in _components(group, lambda i, j: d.get(S, i, j) > label):
            if len(comp) >= 2:
                build(comp)

    build(leaves)
    root = nodes[0]
    rest = sorted(nodes[1:], key=lambda t: t[0])
    return LabeledTree(d.n, ground, (root,) + tuple(rest))


def tree_tensor_entries(tree):
    """``{(i, j): lca label}`` for the leaf pairs of ``tree``."""
    return {(i, j): tree.lca_label(i, j) for i, j in combinations(items_of(tree.ground), 2)}


def tree_structure(v):
    """``{S: laminar family}`` of minimal trees for every ``S`` with two or more leaves."""
    d = delta_tensor(v)
    return {
        S: extract_tree(d, S).family
        for S in range(1 << v.n)
        if popcount(full_mask(v.n) & ~S) >= 2
    }


@dataclass(frozen=True)
class LaminarCheckResult:
    laminar: bool
    witness: object = None  # (X, Y) crossing pair when not laminar

    def __bool__(self):
        return self.laminar


def is_laminar(n, family):
    fam = sorted(set(family))
    for X in fam:
        if X >> n:
            raise InputError("set outside [%d]" % n)
    for X, Y in combinations(fam, 2):
        common = X & Y
        if common and common != X and common != Y:
            return LaminarCheckResult(False, (X, Y))
    return LaminarCheckResult(True)


def find_crossing(u, v):
    """First ``(S, (X, Y))`` where the minimal trees of ``u`` and ``v`` cross, else ``None``."""
    if u.n != v.n:
        raise InputError("dimension mismatch: n=%d vs n=%d" % (u.n, v.n))
    for name, w in (("first", u), ("second", v)):
        bad = check_gs(w)
        if bad:
            raise NotGSError("%s valuation is not GS: %s" % (name, bad[0].describe()), S=bad[0].S)
    fu, fv = tree_structure(u), tree_structure(v)
    for S in sorted(fu):
        res = is_laminar(u.n, fu[S] | fv[S])
        if not res.laminar:
            X, Y = res.witness
            if X not in fu[S]:
                X, Y = Y, X
            return S, (X, Y)
    return None


def concordant(u, v):
    """True iff at every ``S`` the two minimal laminar families have a laminar union."""
    return find_crossing(u, v) is None


def concordant_sum(u, v, alpha=1, beta=1):
    """``alpha*u + beta*v`` for concordant GS valuations; raises otherwise."""
    alpha, beta = _frac(alpha), _frac(beta)
    if alpha < 0 or beta < 0:
        raise InputError("coefficients must be nonnegative")
    au, bv = alpha * u, beta * v
    hit = find_crossing(au, bv)
    if hit is not None:
        S, (X, Y) = hit
        raise ConcordanceError(
            "not tree-concordant at S=%s: %s crosses %s" % (format_set(S), format_set(X), format_set(Y)),
            S,
            (X, Y),
        )
    out = au + bv
    if check_gs(out):
        raise AssertionError("concordant sum failed the GS check")
    return out


def check_integrability(d):
    """Triple identities linking ``Delta^S`` to ``Delta^{S+i}``, ``Delta^{S+j}``, ``Delta^{S+k}``."""
    n = d.n
    for S in range(1 << n):
        for i, j, k in combinations(items_of(full_mask(n) & ~S), 3):
            a = d.get(S | bit(k), i, j) - d.get(S, i, j)
            b = d.get(S | bit(j), i, k) - d.get(S, i, k)
            c = d.get(S | bit(i), j, k) - d.get(S, j, k)
            if not a == b == c:
                return False
    return True


def check_label_consistency(d):
    """Tree-label form of integrability, checked at every ``S`` and triple.

    If ``Delta^S_ik = Delta^S_jk = Delta^S_ij - alpha`` with ``alpha >= 0`` then
    ``Delta^{S+j}_ik = Delta^{S+i}_jk = Delta^{S+k}_ij - alpha``.
    """
    n = d.n
    for S in range(1 << n):
        for a, b, c in combinations(items_of(full_mask(n) & ~S), 3):
            for i, j, k in ((a, b, c), (a, c, b), (b, c, a)):
                ik, jk, ij = d.get(S, i, k), d.get(S, j, k), d.get(S, i, j)
                if ik != jk or ij < ik:
                    continue
                alpha = ij - ik
                lhs1 = d.get(S | bit(j), i, k)
                lhs2 = d.get(S | bit(i), j, k)
                rhs = d.get(S | bit(k), i, j) - alpha
                if not lhs1 == lhs2 == rhs:
                    return False
    return True


def reconstruct(d, order=None):
    """The unique normalized valuation whose ``Delta`` tensor is ``d``.

    ``v(S) = -sum_{i<j in S} Delta_ij^{S_<i}`` where ``<`` is ``order`` (a
    sequence of all items, default natural order).
    """
    if not check_integrability(d):
        raise IntegrabilityError("tensor violates the integrability identities")
    n = d.n
    order = tuple(range(1, n + 1)) if order is None else tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise InputError("%r is not an ordering of [%d]" % (order, n))

    def val(S):
        seq = [x for x in order if S & bit(x)]
        total = Fraction(0)
        prefix = 0
        for pos, i in enumerate(seq):
            for j in seq[pos + 1:]:
                total += d.get(prefix, i, j)
            prefix |= bit(i)
        return -total

    return Valuation.from_function(n, val)
