import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from legproj.integrated_legendre import psi
from legproj.legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    legendre,
    series_derivative,
    series_eval,
    series_inner_product,
)
from legproj.projection import (
    SAMPLE_FUNCTIONS,
    QuadratureError,
    SampleFunction,
    default_quad_order,
    error_seminorm,
    error_trace,
    gauss_rule,
    get_function,
    interpolant,
    polynomial_function,
    project,
    project_exact,
    quadrature_inner_product,
    random_rational_series,
    sobolev_seminorm,
)
from legproj.qfamily import q_poly

X2 = polynomial_function(legendre(0) / 3 + legendre(2) * Fraction(2, 3), "x2")


def test_gauss_small_rules():
    r1 = gauss_rule(1)
    assert float(r1.nodes[0]) == 0.0 and float(r1.weights[0]) == 2.0
    r2 = gauss_rule(2)
    np.testing.assert_allclose([float(x) for x in r2.nodes], [-1 / math.sqrt(3), 1 / math.sqrt(3)])
    np.testing.assert_allclose([float(w) for w in r2.weights], [1.0, 1.0])


def test_gauss_order5_integrates_L4_squared():
    r = gauss_rule(5)
    v = series_eval(legendre(4), r.nodes)
    assert float(r.integrate(v * v)) == pytest.approx(2 / 9, rel=1e-13)


@pytest.mark.parametrize("order", [3, 17, 64])
def test_gauss_matches_numpy(order):
    x, w = np.polynomial.legendre.leggauss(order)
    r = gauss_rule(order)
    np.testing.assert_allclose([float(v) for v in r.nodes], x, atol=1e-15)
    # numpy's double-precision weights drift to ~1e-12 near the ends at order 64
    np.testing.assert_allclose([float(v) for v in r.weights], w, rtol=1e-11)
    assert float(mpmath.fsum(r.weights)) == pytest.approx(2.0, rel=1e-15)


def test_gauss_exact_on_legendre_products():
    r = gauss_rule(12)
    for i in range(12):
        for j in range(i, 24 - i):
            val = float(r.integrate(series_eval(legendre(i), r.nodes) * series_eval(legendre(j), r.nodes)))
            expected = 2 / (2 * i + 1) if i == j else 0.0
            assert val == pytest.approx(expected, abs=1e-13)


def test_gauss_rejects_zero_order():
    with pytest.raises(ValueError):
        gauss_rule(0)


@pytest.mark.parametrize("name", ["exp", "sin3", "runge", "power72"])
def test_sample_derivatives_consistent(name):
    f = get_function(name)
    rng = np.random.default_rng(7)
    h = 1e-6
    for d in range(min(f.max_order, 5)):
        for x in rng.uniform(-0.9, 0.9, 5):
            fd = (float(f.eval(d, x + h)) - float(f.eval(d, x - h))) / (2 * h)
            assert fd == pytest.approx(float(f.eval(d + 1, x)), rel=1e-6, abs=1e-6)


def test_sample_function_order_limit():
    with pytest.raises(ValueError):
        get_function("power72").eval(4, 0.0)
    with pytest.raises(ValueError):
        get_function("cosh")


def test_project_orthogonal_function_is_zero():
    res = project(polynomial_function(legendre(5)), 3)
    assert np.max(np.abs(res.coeffs)) <= 1e-12


def test_project_x_squared():
    res = project(X2, 1)
    np.testing.assert_allclose(res.coeffs, [1 / 3, 0], atol=1e-15)
    assert error_seminorm(X2, 1, 0) ** 2 == pytest.approx(8 / 45, rel=1e-14)
    assert error_seminorm(X2, 1, 1) == pytest.approx(math.sqrt(8 / 3), rel=1e-14)
    assert error_trace(X2, 1, 0, 1) == pytest.approx(2 / 3, rel=1e-14)


def test_parseval_consistency():
    f = get_function("exp")
    res = project(f, 10)
    r = gauss_rule(64)
    v = series_eval(res.series, r.nodes)
    assert res.norm_sq() == pytest.approx(float(r.integrate(v * v)), rel=1e-10)


@pytest.mark.parametrize("p", [0, 3, 8])
def test_polynomial_reproduction(p):
    a = LegendreSeries(Fraction(j + 1, j + 2) for j in range(p + 1))
    res = project(polynomial_function(a), p)
    np.testing.assert_allclose(res.coeffs, [float(c) for c in a.coeffs], atol=1e-12)
    assert error_seminorm(polynomial_function(a), p, 0) <= 1e-11
    assert error_trace(polynomial_function(a), p, 1, -1) <= 1e-10


@pytest.mark.parametrize("name", ["exp", "sin3", "runge"])
def test_best_approximation_and_stability(name):
    f = get_function(name)
    p = 6
    best = error_seminorm(f, p, 0)
    assert best <= sobolev_seminorm(f, 0)
    rng = np.random.default_rng(3)
    base = project(f, p).series
    r = gauss_rule(default_quad_order(p))
    fx = f.eval(0, r.nodes)
    for _ in range(20):
        v = base + LegendreSeries(rng.normal(scale=1e-3, size=p + 1).tolist())
        diff = fx - series_eval(v, r.nodes)
        assert best <= float(mpmath.sqrt(r.integrate(diff * diff))) + 1e-10


def test_project_exact_examples():
    q = q_poly(3, 1).series
    assert project_exact(q, 3).coeffs == q.coeffs[:4]
    assert project_exact(legendre(2), 5) == legendre(2)
    t = project_exact(psi(4, 2), 2)
    assert t.coeffs == psi(4, 2).coeffs[:3] and t.hi == 2


def test_interpolant_k0_is_projection():
    f = get_function("sin3")
    g = interpolant(f, 7, 0)
    np.testing.assert_allclose(g.to_float().coeffs, project(f, 7).coeffs, atol=1e-15)


def test_interpolant_reproduces_cubic():
    cubic = polynomial_function(legendre(3) * 2 + legendre(1), "cubic")
    g = interpolant(cubic, 3, 1)
    np.testing.assert_allclose([float(c) for c in g.coeffs], [0, 1, 0, 2], atol=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_interpolant_conditions(k):
    f = get_function("exp")
    p = 2 * k + 2
    g = interpolant(f, p, k)
    top = project(SampleFunction("d", lambda d, x: f.derivative(d + k, x), 60), p - k).series
    np.testing.assert_allclose(
        [float(c) for c in series_derivative(g, k).coeffs], [float(c) for c in top.coeffs], atol=1e-10
    )
    for i in range(k):
        assert float(endpoint_derivative(g, i, -1)) == pytest.approx(float(f.eval(i, -1)), abs=1e-8)
        assert float(endpoint_derivative(g, i, 1)) == pytest.approx(float(f.eval(i, 1)), abs=1e-8)


def test_interpolant_rejects_p_below_k():
    with pytest.raises(ValueError):
        interpolant(get_function("exp"), 1, 2)


def test_seminorm_examples():
    exp = get_function("exp")
    expected = math.sqrt((math.e**2 - math.e**-2) / 2)
    for s in (0, 3, 7):
        assert sobolev_seminorm(exp, s) == pytest.approx(expected, rel=1e-14)
    assert sobolev_seminorm(polynomial_function(legendre(2)), 0) == pytest.approx(math.sqrt(0.4), rel=1e-14)
    sinpi = SampleFunction(
        "sinpi", lambda d, x: mpmath.pi**d * np.frompyfunc(mpmath.sin, 1, 1)(mpmath.pi * x + d * mpmath.pi / 2), 8
    )
    assert sobolev_seminorm(sinpi, 1) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("name", ["exp", "sin3", "runge"])
@pytest.mark.parametrize("p", [4, 12])
def test_saturation_under_doubling(name, p):
    f = get_function(name)
    n = default_quad_order(p)
    for nu in (0, 1, 2):
        a = error_seminorm(f, p, nu, gauss_rule(n))
        b = error_seminorm(f, p, nu, gauss_rule(2 * n))
        assert abs(a - b) <= 1e-10 * abs(b)


def test_exp_trace_error_positive():
    assert error_trace(get_function("exp"), 8, 1, 1) > 0


def test_error_trace_rejects_bad_sign():
    with pytest.raises(ValueError):
        error_trace(get_function("exp"), 3, 0, 0)


@given(st.integers(0, 2**32 - 1))
def test_quadrature_agrees_with_exact_inner_product(seed):
    rng = np.random.default_rng(seed)
    a, b = random_rational_series(rng), random_rational_series(rng)
    exact = float(series_inner_product(a, b))
    assert quadrature_inner_product(a, b) == pytest.approx(exact, rel=1e-12, abs=1e-300)


def test_sample_suite_names():
    assert set(SAMPLE_FUNCTIONS) == {"exp", "sin3", "runge", "power72"}
    assert isinstance(QuadratureError("x"), RuntimeError)
