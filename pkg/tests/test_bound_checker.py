import math
from fractions import Fraction

import pytest

from legproj._exact import factorial_ratio
from legproj.bound_checker import (
    BoundKind,
    beirao_ratio_scan,
    check_bound,
    houston_scale,
    main_proof_scale,
    main_scale,
    ratio_tail_growth,
    rhs_beirao,
    rhs_deriv_seminorm,
    rhs_l2,
    rhs_trace_corollary,
    rhs_trace_houston,
    rhs_trace_main,
    sharpness_case,
)
from legproj.legendre_core import endpoint_derivative, legendre, series_derivative
from legproj.projection import get_function, polynomial_function
from legproj.qfamily import q_norm_sq, q_poly

W = 1.7  # an arbitrary seminorm value


@pytest.mark.parametrize(
    "p, s, scale",
    [(4, 0, Fraction(1)), (3, 2, Fraction(1, 360)), (5, 5, factorial_ratio(1, 11))],
)
def test_rhs_l2(p, s, scale):
    assert rhs_l2(p, s, W) == pytest.approx(float(scale) * W**2, rel=1e-15)


def test_rhs_l2_rejects_large_s():
    with pytest.raises(ValueError, match="s <= p\\+1"):
        rhs_l2(3, 5, W)


@pytest.mark.parametrize(
    "p, s, scale",
    [(6, 0, Fraction(1, 13)), (4, 1, Fraction(1, 180)), (5, 5, Fraction(1, 11) * factorial_ratio(0, 10))],
)
def test_rhs_trace_houston(p, s, scale):
    assert rhs_trace_houston(p, s, W) == pytest.approx(float(scale) * W**2, rel=1e-15)


def test_rhs_trace_main_examples():
    assert rhs_trace_main(2, 0, 1, None, W) == pytest.approx(16 / 35 / 6 * W**2, rel=1e-15)
    expected = q_norm_sq(q_poly(4, 2)) * factorial_ratio(1, 7)
    assert main_scale(4, 1, 2) == expected
    with pytest.raises(ValueError, match="p > nu"):
        rhs_trace_main(2, 0, 2, None, W)


def test_main_nu0_never_weaker_than_houston():
    for p in range(1, 201):
        for s in range(p + 1):
            assert main_scale(p, s, 0) <= houston_scale(p, s)


def test_proof_scale_differs_only_for_positive_nu():
    for p in range(1, 12):
        for s in range(p + 1):
            assert main_proof_scale(p, s, 0) == main_scale(p, s, 0)
    assert main_proof_scale(5, 1, 2) == q_norm_sq(q_poly(5, 2)) * factorial_ratio(2, 4)


@pytest.mark.parametrize(
    "p, s, nu, scale",
    [
        (5, 1, 0, Fraction(1, 2 * 5) * factorial_ratio(4, 6)),
        (6, 2, 1, 12 * factorial_ratio(4, 8)),
        (8, 1, 2, 8 * 8**3 * factorial_ratio(7, 9)),
    ],
)
def test_rhs_deriv_seminorm(p, s, nu, scale):
    assert rhs_deriv_seminorm(p, s, nu, W) == pytest.approx(float(scale) * W**2, rel=1e-15)


def test_rhs_deriv_rejects_p_below_nu():
    with pytest.raises(ValueError, match="p >= nu"):
        rhs_deriv_seminorm(1, 0, 2, W)


def test_rhs_corollary_and_interp_ranges():
    assert rhs_trace_corollary(4, 1, 1, 1.0) == pytest.approx(4 * float(factorial_ratio(2, 6)))
    assert rhs_beirao(5, 2, 0, 1, 1.0) == pytest.approx(float(factorial_ratio(3, 5) * factorial_ratio(2, 6)))
    with pytest.raises(ValueError, match="2k-1"):
        rhs_beirao(2, 2, 0, 1, 1.0)
    with pytest.raises(ValueError, match="j <= k-1"):
        rhs_beirao(5, 2, 2, 1, 1.0)


def test_check_bound_examples():
    r = check_bound(get_function("exp"), 8, 3, 0, BoundKind.L2_PROJ)
    assert r.passed and r.ratio <= 1
    r = check_bound(get_function("sin3"), 10, 2, 1, "TRACE_MAIN")
    assert r.passed


def test_check_bound_polynomial_has_zero_error():
    f = polynomial_function(legendre(3) + legendre(1) / 2)
    for kind, s, nu in [("L2_PROJ", 1, 0), ("TRACE_HOUSTON", 0, 0), ("TRACE_MAIN", 0, 1)]:
        r = check_bound(f, 5, s, nu, kind)
        assert r.lhs <= 1e-25 and r.passed


def test_check_bound_regularity_gate():
    with pytest.raises(ValueError, match="derivatives only up to order 3"):
        check_bound(get_function("power72"), 6, 2, 1, "TRACE_MAIN")


def test_check_bound_names_violated_range():
    with pytest.raises(ValueError, match="0 <= s <= p"):
        check_bound(get_function("exp"), 3, 4, 0, "TRACE_HOUSTON")


@pytest.mark.parametrize("p, nu, lhs", [(1, 0, Fraction(4, 15)), (2, 1, Fraction(16, 35))])
def test_sharpness_examples(p, nu, lhs):
    u, gap = sharpness_case(p, nu)
    assert gap == 0
    assert series_derivative(u, nu + 1) == q_poly(p, nu).series
    assert abs(endpoint_derivative(u - u.truncate(p), nu, 1)) == lhs


def test_sharpness_grid():
    for p in range(0, 13):
        for nu in range(min(p, 5) + 1):
            assert sharpness_case(p, nu)[1] == 0


def test_sharpness_function_contradicts_literal_main_scale():
    # u^(nu+1) = q gives LHS = ||q||^4 and |u|_{nu+1}^2 = ||q||^2, so at s = 0 the
    # factor (p-nu)!/(p+nu)! < 1 would have to exceed 1 for nu >= 1
    for p, nu in [(2, 1), (5, 2), (9, 3)]:
        n2 = q_norm_sq(q_poly(p, nu))
        lhs = n2**2
        assert lhs > main_scale(p, 0, nu) * n2
        assert lhs <= main_proof_scale(p, 0, nu) * n2


@pytest.mark.parametrize("j", [0, 1])
def test_beirao_scan_exp_bounded(j):
    reps = beirao_ratio_scan(get_function("exp"), 2, j, range(5, 21))
    ratios = [r.ratio for r in reps]
    assert all(math.isfinite(r) for r in ratios)
    assert ratio_tail_growth(list(range(5, 21)), ratios) <= 1.05


def test_beirao_polynomial_zero():
    f = polynomial_function(legendre(4))
    r = beirao_ratio_scan(f, 1, 0, [5])[0]
    assert r.lhs <= 1e-25


def test_ratio_tail_growth():
    assert ratio_tail_growth([1, 2, 3, 4], [1.0, 2.0, 1.5, 1.0]) == 0.75
    assert ratio_tail_growth([1, 2, 3, 4], [1.0, 1.0, 1.0, 3.0]) == 3.0
    assert ratio_tail_growth([1, 2], [0.0, 0.0]) == 0.0
