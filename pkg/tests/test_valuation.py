from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gscone.errors import InputError
from gscone.matroid import normalized_rank, rank_function, uniform_matroid
from gscone.reproduction import counterexample_valuation, submodular_not_gs_function
from gscone.subsets import full_mask, mask_of, popcount
from gscone.substitutes import check_gs, check_submodular
from gscone.valuation import (
    AffineTransform,
    Valuation,
    apply_affine,
    d1,
    d2,
    inner_product,
    item_grouping,
    marginal,
    normalize,
    permute,
    value,
)

from strategies import naive_d2, permutations_of, small_fracs, valuation_pairs, valuations

V = counterexample_valuation()
M = mask_of


def plus_size(v):
    return apply_affine(v, AffineTransform((1,) * v.n, 0))


# -- lookups and derivatives -------------------------------------------------


def test_value_examples():
    assert value(V, M((1, 2))) == -1
    assert value(V, M((1, 2, 3, 4, 5))) == -4
    assert value(Valuation.zero(3), M((1, 3))) == 0


def test_value_rejects_out_of_range_mask():
    with pytest.raises(InputError):
        value(V, 1 << 5)


def test_marginal_examples():
    assert marginal(V, M((4,)), M((1, 5))) == -1
    assert marginal(V, M((1,)), M((1, 2))) == 0
    assert marginal(Valuation.zero(2), 1, 2) == 0


def test_first_derivative_examples():
    assert d1(V, 4, M((1, 2, 3))) == -1
    add = Valuation.additive((3, 1, 4))
    assert d1(add, 3, M((1,))) == 4
    assert d1(normalized_rank(uniform_matroid(5, 1)), 2, M((1,))) == -1
    with pytest.raises(InputError):
        d1(V, 1, M((1,)))


def test_second_derivative_examples():
    assert d2(V, 1, 2, 0) == -1
    assert d2(V, 5, 4, M((3,))) == -1
    add = Valuation.additive((3, 1, 4, 1))
    assert all(d2(add, 1, 2, S) == 0 for S in (0, M((3,)), M((3, 4))))
    with pytest.raises(InputError):
        d2(V, 1, 1, 0)
    with pytest.raises(InputError):
        d2(V, 1, 2, M((2,)))


@given(valuations(min_n=2), st.data())
def test_second_derivative_is_symmetric(v, data):
    i, j = data.draw(st.lists(st.integers(1, v.n), min_size=2, max_size=2, unique=True))
    rest = [x for x in range(1, v.n + 1) if x not in (i, j)]
    S = M(data.draw(st.lists(st.sampled_from(rest), unique=True))) if rest else 0
    assert d2(v, i, j, S) == d2(v, j, i, S)
    assert d2(v, i, j, S) == naive_d2(v, i, j, [x for x in rest if S >> (x - 1) & 1])


# -- affine maps and normalization -------------------------------------------


def test_affine_examples():
    assert plus_size(V) == Valuation.from_function(5, lambda S: V.values[S] + popcount(S))
    const = apply_affine(Valuation.zero(2), AffineTransform((0, 0), 5))
    assert const.values == (5, 5, 5, 5)
    x3 = normalized_rank(uniform_matroid(3, 1))
    assert plus_size(x3) == rank_function(uniform_matroid(3, 1))


def test_normalize_examples():
    v0, t = normalize(rank_function(uniform_matroid(5, 1)))
    assert all(v0.values[S] == 1 - popcount(S) for S in range(1, 32))
    assert v0.values[0] == 0
    same, t_id = normalize(V)
    assert same == V and t_id == AffineTransform.identity(5)
    back, t = normalize(plus_size(V))
    assert back == V and t.p == (1,) * 5 and t.c == 0


@given(valuations(), st.data())
def test_normalize_inverts_affine(v, data):
    v0, t = normalize(v)
    assert v0.is_normalized()
    assert apply_affine(v0, t) == v
    shift = AffineTransform(data.draw(st.lists(small_fracs, min_size=v.n, max_size=v.n)), data.draw(small_fracs))
    # the normalized form is an invariant of the affine class
    assert normalize(apply_affine(v, shift))[0] == v0


@given(valuations(min_n=2), st.data())
def test_second_derivatives_ignore_affine_terms(v, data):
    shift = AffineTransform(data.draw(st.lists(small_fracs, min_size=v.n, max_size=v.n)), data.draw(small_fracs))
    w = apply_affine(v, shift)
    assert all(d2(v, 1, 2, S) == d2(w, 1, 2, S) for S in range(0, 1 << v.n, 4))
    assert bool(check_gs(v)) == bool(check_gs(w))
    assert check_submodular(v) == check_submodular(w)


def test_affine_rejects_wrong_length():
    with pytest.raises(InputError):
        apply_affine(V, AffineTransform((1, 2), 0))


# -- inner product, grouping, relabeling ---------------------------------------


def test_inner_product_examples():
    assert inner_product(V, Valuation.zero(5)) == 0
    with pytest.raises(InputError):
        inner_product(V, Valuation.zero(4))


@given(valuation_pairs(), small_fracs, small_fracs, st.data())
def test_inner_product_is_bilinear(pair, a, b, data):
    u, w = pair
    z = data.draw(valuations(n=u.n))
    assert inner_product(a * u + b * z, w) == a * inner_product(u, w) + b * inner_product(z, w)
    assert inner_product(u, w) == inner_product(w, u)


def test_item_grouping_examples():
    v = Valuation.from_function(4, lambda S: popcount(S) ** 2)
    w = item_grouping(v, [M((1, 2)), M((3,)), M((4,))])
    assert w.n == 3 and w.values[M((1,))] == v.values[M((1, 2))]
    singles = [M((i,)) for i in range(1, 5)]
    assert item_grouping(v, singles) == v
    f = submodular_not_gs_function()
    assert check_submodular(item_grouping(f, [M((1, 2)), M((3, 4))]))


def test_item_grouping_rejects_bad_partitions():
    v = Valuation.zero(3)
    for bad in ([M((1, 2)), M((2, 3))], [M((1,)), M((2,))], [0, full_mask(3)]):
        with pytest.raises(InputError):
            item_grouping(v, bad)


@given(valuations(min_n=1), st.data())
def test_permute_round_trip(v, data):
    perm = data.draw(permutations_of(v.n))
    inverse = [0] * v.n
    for i, p in enumerate(perm, 1):
        inverse[p - 1] = i
    assert permute(permute(v, perm), inverse) == v
    w = permute(v, perm)
    assert w.values[M(perm[:1])] == v.values[M((1,))]


# -- construction ----------------------------------------------------------------


def test_floats_rejected():
    with pytest.raises(InputError):
        Valuation(1, (0, 0.5))


def test_wrong_length_rejected():
    with pytest.raises(InputError):
        Valuation(2, (0, 0, 0))


def test_additive_and_from_dict():
    add = Valuation.additive((Fraction(1, 2), 2), constant=1)
    assert add.values == (1, Fraction(3, 2), 3, Fraction(7, 2))
    d = Valuation.from_dict(3, {M((1, 2)): -1})
    assert d.values[M((1, 2))] == -1 and sum(d.values) == -1


def test_arithmetic():
    assert (V + V) == 2 * V
    assert (V - V).is_zero()
    assert (-V).values[M((1, 2))] == 1
    with pytest.raises(InputError):
        V + Valuation.zero(4)
