"""Exact phase-1 simplex for ``{x >= 0 : A x = b}`` over the rationals.

Bland's rule is used for both the entering and leaving choice, so the
method terminates on every input.  When the system is infeasible the
optimal phase-1 duals give a Farkas ray ``y`` with ``A^T y >= 0`` and
``<b, y> < 0``.
"""

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_MAX_PIVOTS = 100_000


class PivotLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: tuple = None  # solution when feasible
    y: tuple = None  # Farkas ray when infeasible
    pivots: int = 0


def phase_one(A, b, max_pivots=DEFAULT_MAX_PIVOTS):
    """Decide feasibility of ``A x = b, x >= 0`` exactly.

    ``A`` is a list of ``m`` rows of length ``k``.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    zero, one = Fraction(0), Fraction(1)
    sign = [-1 if Fraction(b[r]) < 0 else 1 for r in range(m)]
    width = k + m + 1
    rhs = k + m
    T = []
    for r in range(m):
        row = [Fraction(a) * sign[r] for a in A[r]]
        row.extend(one if c == r else zero for c in range(m))
        row.append(Fraction(b[r]) * sign[r])
        T.append(row)
    basis = [k + r for r in range(m)]
    # reduced costs of the phase-1 objective (sum of artificials), last entry = -objective
    z = [zero] * width
    for j in range(k):
        z[j] = -sum((T[r][j] for r in range(m)), zero)
    z[rhs] = -sum((T[r][rhs] for r in range(m)), zero)

    pivots = 0
    while True:
        col = next((j for j in range(k + m) if z[j] < 0), None)
        if col is None:
            break
        best = None
        for r in range(m):
            a = T[r][col]
            if a > 0:
                ratio = T[r][rhs] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        # phase-1 objective is bounded below by 0, so a leaving row always exists
        pr = best[1]
        pivots += 1
        if pivots > max_pivots:
            raise PivotLimitExceeded("simplex exceeded %d pivots" % max_pivots)
        prow = T[pr]
        piv = prow[col]
        if piv != 1:
            prow = [x / piv for x in prow]
            T[pr] = prow
        nz = [j for j in range(width) if prow[j]]
        for r in range(m):
            if r == pr:
                continue
            f = T[r][col]
            if f:
                row = T[r]
                for j in nz:
                    row[j] -= f * prow[j]
        f = z[col]
        for j in nz:
            z[j] -= f * prow[j]
        basis[pr] = col

    if z[rhs] == 0:
        x = [zero] * k
        for r, j in enumerate(basis):
            if j < k:
                x[j] = T[r][rhs]
        return LPResult(True, x=tuple(x), pivots=pivots)
    # dual of row r is 1 - (reduced cost of artificial r); undo the row flips
    y = tuple(-sign[r] * (one - z[k + r]) for r in range(m))
    return LPResult(False, y=y, pivots=pivots)
