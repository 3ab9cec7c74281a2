"""The five-item counterexample with its Farkas certificate, plus the end-to-end checks.

Every claim is recomputed from scratch by :func:`verify_claims`; nothing is
taken on trust from the hard-coded tables except the tables themselves.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cone import (
    WeightedMatroid,
    decompose,
    matroid_cone,
    sample_gs,
    verify_certificate,
    weighted_rank_decompose,
    weighted_rank_valuation,
)
from .matroid import (
    enumerate_matroids,
    is_matroid_rank_valuation,
    isomorphism_classes,
    normalized_rank,
)
from .subsets import bit, format_set, mask_of, popcount
from .substitutes import check_gs, check_submodular
from .tree import delta_tensor, extract_tree
from .valuation import Valuation, inner_product


def _table(n, rows):
    return Valuation.from_dict(n, {mask_of(S): x for S, x in rows.items()})


_COUNTEREXAMPLE = {
    (1, 2): -1, (1, 3): -1, (1, 4): 0, (1, 5): 0, (2, 3): -1,
    (2, 4): 0, (2, 5): 0, (3, 4): 0, (3, 5): 0, (4, 5): 0,
    (1, 2, 3): -2, (1, 2, 4): -2, (1, 2, 5): -2, (1, 3, 4): -1, (1, 3, 5): -1,
    (1, 4, 5): -1, (2, 3, 4): -1, (2, 3, 5): -1, (2, 4, 5): -1, (3, 4, 5): -1,
    (1, 2, 3, 4): -3, (1, 2, 3, 5): -3, (1, 2, 4, 5): -3, (1, 3, 4, 5): -2,
    (2, 3, 4, 5): -2, (1, 2, 3, 4, 5): -4,
}

_CERTIFICATE = {
    (1, 2): -1, (1, 3): 1, (1, 4): -1, (1, 5): -1, (2, 3): 1,
    (2, 4): -1, (2, 5): -1, (3, 4): -1, (3, 5): -1, (4, 5): -1,
    (1, 2, 3): -1, (1, 2, 4): 1, (1, 2, 5): 1, (1, 3, 4): -1, (1, 3, 5): 1,
    (1, 4, 5): 1, (2, 3, 4): -1, (2, 3, 5): 1, (2, 4, 5): 1, (3, 4, 5): 1,
    (1, 2, 3, 4): 1, (1, 2, 3, 5): 1, (1, 2, 4, 5): -1, (1, 3, 4, 5): -1,
    (2, 3, 4, 5): -1, (1, 2, 3, 4, 5): -1,
}

# group -> {set: certificate value as printed next to the group}
_GROUPS = {
    1: {(3, 4): -1, (4, 5): -1},
    2: {(1, 3): 1, (1, 4): -1, (1, 3, 4): -1},
    3: {(2, 3): 1, (2, 4): -1, (2, 3, 4): -1},
    4: {
        (1, 5): -1, (2, 5): -1, (3, 5): -1, (1, 4, 5): 1, (2, 4, 5): 1,
        (3, 4, 5): 1, (2, 3, 5): 1, (2, 3, 4, 5): -1, (1, 3, 5): 1, (1, 3, 4, 5): -1,
    },
    5: {(1, 2): -1, (1, 2, 4): 1, (1, 2, 5): 1, (1, 2, 4, 5): -1},
    6: {(1, 2, 3): -1, (1, 2, 3, 4): 1, (1, 2, 3, 5): 1, (1, 2, 3, 4, 5): -1},
}

# items a, b, c, d are 1, 2, 3, 4
_SUBMODULAR_NOT_GS = {
    (1, 2): -1, (2, 4): -1, (2, 3): -1, (1, 3, 4): -1,
    (1, 3): 0, (1, 4): 0, (3, 4): 0,
    (1, 2, 3): -2, (1, 2, 4): -2, (2, 3, 4): -2,
    (1, 2, 3, 4): -3,
}


def counterexample_valuation():
    """The normalized five-item GS valuation outside the matroid cone."""
    return _table(5, _COUNTEREXAMPLE)


def reference_certificate():
    """Integer Farkas certificate separating the counterexample from the matroid cone."""
    return _table(5, _CERTIFICATE)


def submodular_not_gs_function():
    """Extremal submodular function on four items that is not GS."""
    return _table(4, _SUBMODULAR_NOT_GS)


@dataclass(frozen=True)
class GroupPartition:
    groups: tuple  # six tuples of masks

    def __post_init__(self):
        seen = set()
        for g in self.groups:
            for S in g:
                if S in seen:
                    raise ValueError("group partition overlaps at %s" % format_set(S))
                seen.add(S)


def group_partition():
    return GroupPartition(tuple(tuple(mask_of(S) for S in _GROUPS[g]) for g in range(1, 7)))


def group_table_values():
    """``{mask: value}`` printed alongside the groups (must agree with the certificate)."""
    return {mask_of(S): Fraction(x) for g in _GROUPS.values() for S, x in g.items()}


def group_labels():
    """Valuation-shaped vector holding the group number of each set (0 for size <= 1)."""
    return Valuation.from_dict(5, {mask_of(S): g for g, rows in _GROUPS.items() for S in rows})


@dataclass
class ClaimReport:
    claim_id: int
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"claim": self.claim_id, "name": self.name, "passed": self.passed, "witness": self.witness}


def _group_products(y, part, r):
    return [sum((y.values[S] * r.values[S] for S in g), Fraction(0)) for g in part.groups]


def verify_group_bounds(y, part, catalog):
    """Per-group sign bounds for ``<y, r>`` over every normalized rank function in ``catalog``."""
    failures = []
    for idx, m in enumerate(catalog):
        r = normalized_rank(m)
        prods = _group_products(y, part, r)
        total = sum(prods, Fraction(0))
        bad = []
        for gi, p in enumerate(prods, 1):
            if gi != 4 and p < 0:
                bad.append("G%d=%s<0" % (gi, p))
        if prods[3] < -1:
            bad.append("G4=%s<-1" % prods[3])
        if prods[3] == -1:
            if total < 0:
                bad.append("G4=-1 and total=%s<0" % total)
            if not any(p >= 1 for gi, p in enumerate(prods, 1) if gi != 4):
                bad.append("G4=-1 with no compensating group")
        if bad:
            failures.append({
                "matroid": idx,
                "bases": [format_set(B) for B in m.bases],
                "products": [str(p) for p in prods],
                "problems": bad,
            })
    return ClaimReport(
        4,
        "group-partition bounds",
        not failures,
        {"matroids": len(catalog), "failures": failures[:5], "failure_count": len(failures)},
    )


def chain_labels(v=None):
    """Labels ``m1 .. m6`` of the three key trees of the counterexample."""
    v = counterexample_valuation() if v is None else v
    d = delta_tensor(v)
    t_empty = extract_tree(d, 0)
    t5 = extract_tree(d, bit(5))
    t1 = extract_tree(d, bit(1))
    return {
        "m1": t_empty.lca_label(1, 4),
        "m2": t_empty.label_of(mask_of((1, 2, 3))),
        "m3": t5.lca_label(1, 3),
        "m4": t5.label_of(mask_of((1, 2))),
        "m5": t1.lca_label(2, 3),
        "m6": t1.label_of(mask_of((2, 4, 5))),
    }


def chain_constraints_check(v=None):
    try:
        m = chain_labels(v)
    except (KeyError, ValueError) as exc:
        return ClaimReport(9, "tree label relations", False, {"error": str(exc)})
    gap = m["m2"] - m["m1"]
    checks = {
        "m3-m5 == m2-m1": m["m3"] - m["m5"] == gap,
        "m6-m3 == 0": m["m6"] - m["m3"] == 0,
        "m4-m6 == m2-m1": m["m4"] - m["m6"] == gap,
        "m2-m1 == 1": gap == 1,
        "m4 == m5 + 2(m2-m1)": m["m4"] == m["m5"] + 2 * gap,
    }
    return ClaimReport(
        9,
        "tree label relations",
        all(checks.values()),
        {"labels": {k: str(x) for k, x in m.items()}, "checks": checks},
    )


# labeled / isomorphism-class matroid counts; 5 is quoted in the literature,
# 3 and 4 were computed independently from the independent-set axioms
MATROID_COUNTS = {3: (16, 8), 4: (68, 17), 5: (406, 38)}


def _random_weighted_matroid(rng, n):
    cat = enumerate_matroids(n)
    m = cat.entries[rng.randrange(len(cat))]
    weights = [Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(n)]
    return WeightedMatroid(m, weights)


def verify_claims(claims=None, matroid_n=5, samples=200, weighted_samples=50, seed=0, v=None):
    """Run the numbered checks and return one :class:`ClaimReport` per claim."""
    selected = set(range(1, 12)) if claims is None else set(claims)
    v = counterexample_valuation() if v is None else v
    y = reference_certificate()
    reports = []
    catalog5 = None

    def cat5():
        nonlocal catalog5
        if catalog5 is None:
            catalog5 = enumerate_matroids(5)
        return catalog5

    if 1 in selected:
        bad = check_gs(v)
        reports.append(ClaimReport(
            1, "counterexample is GS",
            not bad and bad.triples_checked == 40,
            {"triples_checked": bad.triples_checked,
             "violations": [b.describe() for b in bad[:5]]},
        ))
    if 2 in selected:
        ip = inner_product(y, v)
        reports.append(ClaimReport(2, "<y, v> = -1", ip == -1, {"inner_product": str(ip)}))
    if 3 in selected:
        worst = None
        for m in cat5():
            ip = inner_product(y, normalized_rank(m))
            if worst is None or ip < worst[0]:
                worst = (ip, m)
        reports.append(ClaimReport(
            3, "<y, r> >= 0 for every matroid on [5]",
            worst[0] >= 0,
            {"matroids": len(cat5()), "min_inner_product": str(worst[0]),
             "argmin_bases": [format_set(B) for B in worst[1].bases]},
        ))
    if 4 in selected:
        reports.append(verify_group_bounds(y, group_partition(), cat5()))
    res = None
    if 5 in selected or 6 in selected:
        res = decompose(v, matroid_cone(5))
    if 5 in selected:
        reports.append(ClaimReport(
            5, "LP over the matroid cone is infeasible",
            not res.feasible,
            {"generators": len(matroid_cone(5)), "pivots": res.pivots},
        ))
    if 6 in selected:
        ok = (not res.feasible) and verify_certificate(res.certificate, v, matroid_cone(5))
        reports.append(ClaimReport(
            6, "solver certificate verifies",
            ok,
            {"certificate": {format_set(S): str(x) for S, x in enumerate(res.certificate.y.values) if x}
             if not res.feasible else None},
        ))
    if 7 in selected:
        cat = enumerate_matroids(matroid_n)
        labeled, iso = len(cat), isomorphism_classes(cat)
        expected = MATROID_COUNTS.get(matroid_n)
        reports.append(ClaimReport(
            7, "matroid counts on [%d]" % matroid_n,
            expected is not None and (labeled, iso) == expected,
            {"labeled": labeled, "isomorphism_classes": iso,
             "expected": list(expected) if expected else None},
        ))
    if 8 in selected:
        f = submodular_not_gs_function()
        f_plus = Valuation.from_function(4, lambda S: f.values[S] + popcount(S))
        sub, gs_bad, mr = check_submodular(f), check_gs(f), is_matroid_rank_valuation(f_plus)
        reports.append(ClaimReport(
            8, "extremal submodular f is not GS",
            sub and bool(gs_bad) and not mr,
            {"submodular": sub, "gs_violations": len(gs_bad),
             "first_violation": gs_bad[0].describe() if gs_bad else None,
             "matroid_rank": mr},
        ))
    if 9 in selected:
        reports.append(chain_constraints_check(v))
    if 10 in selected:
        failures = []
        for n in (2, 3, 4):
            cone = matroid_cone(n)
            for idx, s in enumerate(sample_gs(n, seed + n, samples)):
                if check_gs(s) or not decompose(s, cone).feasible:
                    failures.append({"n": n, "sample": idx})
        reports.append(ClaimReport(
            10, "GS on n <= 4 decomposes into matroid rank functions",
            not failures,
            {"samples_per_n": samples, "failures": failures[:5]},
        ))
    if 11 in selected:
        rng = random.Random(seed)
        failures = 0
        for _ in range(weighted_samples):
            wm = _random_weighted_matroid(rng, rng.randint(1, 5))
            if weighted_rank_decompose(wm).value() != weighted_rank_valuation(wm):
                failures += 1
        reports.append(ClaimReport(
            11, "weighted rank = telescoping sum of rank functions",
            failures == 0,
            {"samples": weighted_samples, "failures": failures},
        ))
    return reports


# prices at which the non-GS four-item function has a local maximum
# ({2}, utility 1) below the global one ({1,3}, utility 2)
LOCAL_GLOBAL_WITNESS_PRICE = (-1, -1, -1, 0)
