from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import bf_minimal, bf_power, bf_reg, primary_ideals
from regdefect.defect import (
    CERT_THEOREM,
    CERT_UNCERTIFIED,
    CERT_WITNESS,
    CERT_ZERO,
    asymptotic_degree,
    complete_intersection,
    compute_rows,
    defect_sequence,
    generator_degree_stats,
    monotone_threshold,
    mu,
    pure_power_profile,
    reduce_monomial,
    simple_bound,
    stable_defect,
)
from regdefect.monomial import MonomialIdeal, PowerCache, boxed_ideal
from regdefect.regularity import NotArtinian


def test_asymptotic_degree_and_profile():
    I = MonomialIdeal(3, [(4, 0, 0), (0, 2, 0), (0, 0, 4), (1, 1, 1)])
    assert asymptotic_degree(I) == 4
    p = pure_power_profile(I)
    assert (p.d, p.x_var, p.y_vars, p.z_vars, p.l, p.k) == (4, 0, (2,), ((1, 2),), 2, 1)
    assert p.relabeling() == {"x": "x1", "y": ["x3"], "z": [["x2", 2]]}
    assert pure_power_profile(I, 2).x_var == 2
    with pytest.raises(ValueError):
        pure_power_profile(I, 1)
    with pytest.raises(NotArtinian):
        asymptotic_degree(MonomialIdeal(2, [(2, 0), (1, 1)]))


def test_reduce_monomial_decomposition():
    I = MonomialIdeal(3, [(4, 0, 0), (0, 2, 0), (0, 0, 4), (1, 1, 1)])
    p = pure_power_profile(I)
    red = reduce_monomial((9, 5, 3), p, 6)
    assert red.quotients == (2, 2, 0) and red.remainders == (1, 1, 3)
    assert (red.m_x, red.ord_Y, red.ord_Z) == (2, 0, 2)
    assert red.mbar == 6 - 2 - 0 - 2
    assert tuple(red.a_x) == (9, 1, 3)


def test_complete_intersection_defect():
    # reg of the m-th power of (x1^d, ..., xn^d) is n(d-1) + 1 + d(m-1)
    for n, d in [(2, 2), (3, 3), (2, 5)]:
        rep = defect_sequence(complete_intersection(n, d), 4)
        assert rep.e == ((n - 1) * (d - 1),) * 4
    assert mu(boxed_ideal([2, 2]), 2) == 1


def test_generator_stats_and_thresholds():
    I = MonomialIdeal(2, [(3, 0), (0, 3), (1, 1), (2, 2)])
    st = generator_degree_stats(I)
    assert (st.d, st.b) == (3, 0)
    assert st.b_prime == float("inf")
    assert monotone_threshold(I) == 0
    J = MonomialIdeal(2, [(3, 0), (0, 3), (2, 2)])
    st = generator_degree_stats(J)
    assert (st.b, st.b_prime) == (1, 1)
    # reg of (x^3, y^3) is 5, spread over d + b' = 4
    assert monotone_threshold(J) == Fraction(5, 4)
    assert simple_bound(pure_power_profile(J)) == max(1, 1 * (2 * 2 - 1))


@settings(max_examples=40, deadline=None)
@given(primary_ideals(max_n=3, max_pure=3, max_extra=3))
def test_rows_match_oracle(data):
    I, gens = data
    d = asymptotic_degree(I)
    rows = compute_rows(I, 3)
    for r in rows:
        ref = bf_reg(bf_power(bf_minimal(gens), r.m, I.dim), I.dim)
        assert r.reg == ref and r.e == ref - d * r.m


@settings(max_examples=40, deadline=None)
@given(primary_ideals(max_n=3, max_pure=4, max_extra=4))
def test_certificates_hold_beyond_certification(data):
    I, _ = data
    cache = PowerCache(I)
    rep = stable_defect(I, max_m=12, cache=cache)
    assert rep.certified, rep.stop_reason
    assert rep.certificate in (CERT_ZERO, CERT_WITNESS, CERT_THEOREM)
    tail = compute_rows(I, rep.certified_stable_from + 3, cache)[rep.certified_stable_from - 1:]
    assert {r.e for r in tail} == {rep.e_infinity}
    assert not rep.problems()


def test_stable_defect_budget_stops():
    # x^3 m + (y^3, z^3): decreasing defect, nothing certifies at m = 1
    I = MonomialIdeal(3, [(4, 0, 0), (3, 1, 0), (3, 0, 1), (0, 3, 0), (0, 0, 3)])
    rep = stable_defect(I, max_m=1)
    assert rep.certificate == CERT_UNCERTIFIED and "power budget" in rep.stop_reason
    rep = stable_defect(I, max_generators=3)
    assert not rep.certified and "generator ceiling" in rep.stop_reason
    with pytest.raises(KeyError):
        rep.e_at(2)


def test_defect_sequence_rejects_bad_input():
    with pytest.raises(ValueError):
        defect_sequence(boxed_ideal([2, 2]), 0)
    with pytest.raises(NotArtinian):
        stable_defect(MonomialIdeal(2, [(1, 1)]))
