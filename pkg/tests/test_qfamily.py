from fractions import Fraction

import pytest

from legproj.legendre_core import endpoint_derivative, legendre
from legproj.qfamily import (
    alpha_beta_closed,
    growth_scan,
    interface_defects,
    q0_norm_sq_closed,
    q1_norm_sq_closed,
    q_base,
    q_endpoint_closed,
    q_next,
    q_norm_sq,
    q_poly,
    wz_closed,
    wz_sum,
    wz_sum_printed,
)


def test_base_examples():
    assert q_base(0).series == (legendre(0) + legendre(1)) / 2
    assert q_base(2).series == (legendre(2) + legendre(3)) / 2
    assert q_norm_sq(q_base(3)) == Fraction(8, 63)


def test_first_step_coefficients():
    q = q_next(q_base(1))
    assert q.coefficients == ((Fraction(-3, 2), Fraction(-1, 2)),)


def test_q21_coefficients():
    # q(1) = 1 forces the L_1 coefficient to be +3/5
    q = q_poly(2, 1).series
    assert q.coeffs[1:] == (Fraction(3, 5), Fraction(5, 7), Fraction(-1, 10), Fraction(-3, 14))
    assert q.coeffs[0] == 0


def test_q_p1_lowest_coefficient_formula():
    for p in range(1, 15):
        coeff = q_poly(p, 1).series[p - 1]
        assert coeff == Fraction((p + 2) * (p + 1), 4 * (2 * p + 1))


def test_norm_examples():
    assert q_norm_sq(q_poly(2, 1)) == Fraction(16, 35)
    assert q_norm_sq(q_poly(1, 1)) == Fraction(26, 35)
    assert q1_norm_sq_closed(2) == Fraction(16, 35)


def test_q_next_rejects_p_too_small():
    with pytest.raises(ValueError):
        q_next(q_poly(1, 1))
    with pytest.raises(ValueError):
        q_poly(2, 3)


@pytest.mark.parametrize("p", range(0, 31, 3))
def test_interface_conditions(p):
    for nu in range(min(p, 6) + 1):
        q = q_poly(p, nu)
        assert all(v == 0 for v in interface_defects(q).values())
        assert q.series.in_band(*q.band)


@pytest.mark.parametrize(
    "p, nu, expected",
    [(1, 1, (Fraction(-3, 2), Fraction(-1, 2))), (3, 1, (Fraction(-5), Fraction(-3)))],
)
def test_alpha_beta_examples(p, nu, expected):
    assert alpha_beta_closed(p, nu) == expected
    assert q_poly(p, nu).coefficients[-1] == expected


def test_alpha_beta_match_solved_system():
    for p in range(2, 20):
        for nu in range(1, min(p, 6) + 1):
            assert q_poly(p, nu).coefficients[nu - 1] == alpha_beta_closed(p, nu)


def test_endpoint_closed_examples():
    assert q_endpoint_closed(1, 1)[0] == 2
    assert q_endpoint_closed(2, 1)[0] == Fraction(9, 2)


def test_endpoint_closed_matches_direct():
    for p in range(1, 20):
        for nu in range(1, min(p, 6) + 1):
            prev = q_poly(p, nu - 1).series
            plus, minus = q_endpoint_closed(p, nu)
            assert plus == endpoint_derivative(prev, nu, 1)
            assert minus == endpoint_derivative(prev, nu, -1)


def test_wz_even_nu_vanishes():
    for p in range(2, 25):
        for nu in range(2, min(p, 8) + 1, 2):
            assert wz_sum(p, nu) == 0 == wz_closed(p, nu)


@pytest.mark.parametrize("p, nu", [(1, 1), (5, 3), (9, 7), (30, 8)])
def test_wz_sum_equals_closed_form(p, nu):
    assert wz_sum(p, nu) == wz_closed(p, nu)


def test_wz_sum_is_the_endpoint_difference():
    for p in range(1, 12):
        for nu in range(1, min(p, 5) + 1):
            direct = (endpoint_derivative(q_poly(p, 0).series, nu + 1, 1)
                      - endpoint_derivative(q_poly(p, nu).series, nu + 1, 1))
            assert wz_sum(p, nu) == direct


def test_wz_printed_sign_is_opposite():
    for p in range(1, 15):
        for nu in range(1, min(p, 8) + 1):
            assert wz_sum_printed(p, nu) == -wz_closed(p, nu)


def test_q0_norm_closed_and_houston_improvement():
    for p in range(0, 60):
        n2 = q_norm_sq(q_poly(p, 0))
        assert n2 == q0_norm_sq_closed(p)
        assert n2 < Fraction(1, 2 * p + 1)


def test_growth_scan_nu0_below_half():
    rows = growth_scan(0, range(1, 120))
    assert all(r < 0.5 for _, _, r in rows)


@pytest.mark.parametrize("nu", [1, 3])
def test_growth_scan_bounded(nu):
    ratios = [r for _, _, r in growth_scan(nu, range(10, 101))]
    assert max(ratios[len(ratios) // 2:]) <= max(ratios[: len(ratios) // 2])


def test_growth_scan_rejects_small_p():
    with pytest.raises(ValueError):
        growth_scan(2, [1])
