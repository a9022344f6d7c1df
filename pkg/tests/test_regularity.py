import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import bf_reg, bf_socle, bf_standard, bf_witness, bf_contains, primary_ideals
from regdefect.monomial import MonomialIdeal, boxed_ideal, max_ideal_power, unit_ideal
from regdefect.regularity import (
    NotArtinian,
    in_socle,
    regularity,
    socle_any,
    socle_monomials,
    standard_monomials,
    witness_set,
)


@pytest.mark.parametrize("strategy", ["corner", "box"])
def test_known_regularities(strategy):
    assert regularity(MonomialIdeal(2, [(2, 0), (0, 2)]), strategy) == 3
    for n, q in [(1, 4), (2, 3), (3, 5), (4, 2)]:
        assert regularity(max_ideal_power(n, q), strategy) == q
    # complete intersection of degree-d pure powers: n(d-1) + 1
    for n, d in [(2, 3), (3, 4), (4, 2)]:
        assert regularity(boxed_ideal([d] * n), strategy) == n * (d - 1) + 1


def test_socle_and_witness_small():
    I = MonomialIdeal(2, [(2, 0), (0, 3), (1, 2)])
    soc = socle_monomials(I)
    assert [tuple(u) for u in soc.monomials] == [(0, 2), (1, 1)]
    w = witness_set(I)
    assert w.degree == 2 and (1, 1) in w and (0, 0) not in w
    assert len(standard_monomials(I)) == 5


def test_errors_on_non_artinian():
    I = MonomialIdeal(2, [(2, 0), (1, 1)])
    with pytest.raises(NotArtinian):
        regularity(I)
    with pytest.raises(NotArtinian):
        socle_monomials(unit_ideal(2))
    with pytest.raises(ValueError):
        regularity(boxed_ideal([2, 2]), "nope")


def test_socle_any_on_infinite_length_quotient():
    # S/(x^2, xy) has socle spanned by x alone
    K = MonomialIdeal(2, [(2, 0), (1, 1)])
    assert [tuple(u) for u in socle_any(K)] == [(1, 0)]
    assert in_socle(K, (1, 0)) and not in_socle(K, (0, 3))
    assert socle_any(MonomialIdeal(2, [(1, 1)])) == ()


@settings(max_examples=120, deadline=None)
@given(primary_ideals(max_n=3, max_pure=5, max_extra=5))
def test_strategies_match_oracle(data):
    I, gens = data
    n = I.dim
    ref_reg = bf_reg(gens, n)
    ref_soc = bf_socle(gens, n)
    ref_wit = bf_witness(gens, n)
    for s in ("corner", "box"):
        J = MonomialIdeal(n, gens)  # fresh memo per strategy
        assert regularity(J, s) == ref_reg
        assert sorted(tuple(u) for u in socle_monomials(J, s).monomials) == ref_soc
        assert sorted(tuple(u) for u in witness_set(J, s).monomials) == ref_wit
    assert sorted(tuple(u) for u in standard_monomials(I)) == sorted(bf_standard(gens, n))


@settings(max_examples=60, deadline=None)
@given(primary_ideals(max_n=3, max_pure=4, max_extra=4))
def test_socle_any_on_truncations(data):
    # drop one pure power: the quotient gets infinite length
    I, gens = data
    n = I.dim
    low = [g for g in I.gens.tolist() if not (sum(1 for v in g if v) == 1 and g[0] > 0)]
    if not low:
        return
    K = MonomialIdeal(n, low)
    got = sorted(tuple(u) for u in socle_any(K))
    # socle monomials have u_i + 1 <= a generator coordinate, so this box suffices
    top = np.array(low).max(axis=0)
    box = [range(int(t) + 1) for t in top]
    want = []
    for u in itertools.product(*box):
        if bf_contains(low, u):
            continue
        if all(bf_contains(low, tuple(v + (j == i) for j, v in enumerate(u))) for i in range(n)):
            want.append(u)
    assert got == sorted(want)
