import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gscone.cone import sample_gs
from gscone.errors import InputError
from gscone.matroid import normalized_rank, rank_function, uniform_matroid
from gscone.reproduction import LOCAL_GLOBAL_WITNESS_PRICE, counterexample_valuation, submodular_not_gs_function
from gscone.subsets import mask_of, permute_mask, popcount
from gscone.substitutes import (
    check_gs,
    check_local_global,
    check_submodular,
    demand,
    greedy,
    is_gs,
    is_gs_min_twice,
    local_maxima,
    priced,
)
from gscone.valuation import Valuation, permute

from strategies import naive_is_gs, permutations_of, valuations

V = counterexample_valuation()
F = submodular_not_gs_function()
M = mask_of
GS_SAMPLES = [v for n in (2, 3, 4) for v in sample_gs(n, 11, 30)]


def monotone(v):
    return Valuation.from_function(v.n, lambda S: v.values[S] + popcount(S))


def test_counterexample_is_gs_with_forty_triples():
    bad = check_gs(V)
    assert list(bad) == [] and bad.triples_checked == 40
    assert bad.pairs_checked == 80
    assert check_submodular(V)


def test_additive_is_gs():
    assert is_gs(Valuation.additive((1, -2, 3, 0)))


def test_submodular_not_gs_violation():
    bad = check_gs(F)
    assert bad
    first = bad[0]
    assert (first.S, first.i, first.j, first.k) == (0, 1, 3, 2)
    assert (first.lhs, first.rhs) == (0, -1)
    assert first.kind == "triple-inequality"
    assert check_submodular(F)


def test_positive_interaction_is_flagged():
    v = Valuation.from_dict(2, {M((1, 2)): 1})
    assert not check_submodular(v)
    (bad,) = check_gs(v)
    assert bad.kind == "nonpositivity" and "> 0" in bad.describe()


@settings(max_examples=300)
@given(valuations(min_n=2, max_n=4))
def test_gs_check_agrees_with_naive_definition_and_second_phrasing(v):
    gs = is_gs(v)
    assert gs == naive_is_gs(v)
    assert gs == is_gs_min_twice(v)
    if gs:
        assert check_submodular(v)


@pytest.mark.parametrize("v", GS_SAMPLES[::3] + [V])
def test_gs_agrees_with_both_phrasings_on_gs_inputs(v):
    assert is_gs(v) and is_gs_min_twice(v) and naive_is_gs(v) and check_submodular(v)


@given(valuations(min_n=3, max_n=4), st.data())
def test_violations_move_with_relabeling(v, data):
    perm = data.draw(permutations_of(v.n))
    ours = {(permute_mask(b.S, perm), frozenset((perm[b.i - 1], perm[b.j - 1])), b.k and perm[b.k - 1])
            for b in check_gs(v)}
    theirs = {(b.S, frozenset((b.i, b.j)), b.k) for b in check_gs(permute(v, perm))}
    assert ours == theirs


# -- prices and demand -------------------------------------------------------------


def test_priced_examples():
    assert priced(V, (0,) * 5) == V
    v = priced(normalized_rank(uniform_matroid(2, 1)) + Valuation.additive((1, 1)), (Fraction(1, 2),) * 2)
    assert v.values[M((1,))] == Fraction(1, 2) and v.values[M((1, 2))] == 0
    assert priced(monotone(V), (1,) * 5) == V
    with pytest.raises(InputError):
        priced(V, (1, 2))


def test_demand_examples():
    huge = demand(V, (10**6,) * 5)
    assert huge.demanded == frozenset({0}) and huge.max_value == 0
    r = rank_function(uniform_matroid(2, 1))
    d = demand(r, (Fraction(1, 2),) * 2)
    assert d.max_value == Fraction(1, 2) and d.demanded == frozenset({M((1,)), M((2,))})
    d = demand(monotone(V), (0,) * 5)
    assert d.max_value == 2 and M((1, 4)) in d.demanded


def test_greedy_examples():
    assert greedy(V, (100,) * 5) == 0
    assert greedy(Valuation.additive((3, 1)), (2, 2)) == M((1,))


def test_greedy_is_in_demand_for_gs():
    rng = random.Random(3)
    for v in GS_SAMPLES:
        for _ in range(5):
            p = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(v.n)]
            assert greedy(v, p) in demand(v, p).demanded
            assert check_local_global(v, p)


def test_local_global_examples():
    add = Valuation.additive((2, -1, 3))
    assert all(check_local_global(add, p) for p in ((0, 0, 0), (3, -2, 1), (1, 1, 1)))
    assert check_local_global(V, (1, 0, 2, 0, 1))


def test_local_global_fails_for_submodular_not_gs():
    p = LOCAL_GLOBAL_WITNESS_PRICE
    assert not check_local_global(F, p)
    best = demand(F, p)
    stuck = [S for S in local_maxima(F, p) if S not in best.demanded]
    assert stuck == [M((2,))]
    assert priced(F, p).values[M((2,))] == 1 and best.max_value == 2
