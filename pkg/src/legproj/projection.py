"""L2 projection onto P_p, the interpolation operator I_{p,k}, and error norms.

Integrals are Gauss-Legendre sums carried out in mpmath at ``WORKING_DPS``
significant digits.  Projection errors of smooth functions fall far below
double-precision round-off long before p = 20, and a quantity that sits at
the round-off floor cannot pass the doubled-order saturation check.  Arrays
of mpmath numbers are plain numpy object arrays.  Scalar results are handed
back as Python floats; projections come back as :class:`LegendreSeries` with
mpmath coefficients.  The exact modules never consume either.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, wraps
from typing import Callable

import mpmath
import numpy as np
from numpy.polynomial import legendre as npleg

from .legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    legendre,
    series_antiderivative,
    series_derivative,
    series_eval,
)

__all__ = [
    "WORKING_DPS",
    "GaussRule",
    "QuadratureError",
    "gauss_rule",
    "default_quad_order",
    "SampleFunction",
    "SAMPLE_FUNCTIONS",
    "get_function",
    "polynomial_function",
    "ProjectionResult",
    "project",
    "project_exact",
    "interpolant",
    "sobolev_seminorm",
    "seminorm_of_difference",
    "error_seminorm",
    "error_trace",
    "quadrature_inner_product",
    "random_rational_series",
]

WORKING_DPS = 40

mp = mpmath.mp


def _working_precision(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        with mp.workdps(WORKING_DPS):
            return func(*args, **kwargs)

    return wrapper


def _as_mp(x):
    if isinstance(x, np.ndarray):
        if x.dtype == object:
            return x
        return np.array([mp.mpf(float(v)) for v in x.ravel()], dtype=object).reshape(x.shape)
    return mp.mpf(x)


class QuadratureError(RuntimeError):
    """Newton failed to converge, or a quantity was not quadrature-saturated."""


@dataclass(frozen=True)
class GaussRule:
    """Gauss-Legendre nodes and weights as object arrays of mpmath numbers."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values):
        return mpmath.fsum(self.weights * values)


def _legendre_and_derivative(n: int, x):
    p0, p1 = np.ones_like(x), x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = n * (x * p1 - p0) / (x * x - 1)
    return p1, dp


def _newton_nodes(order: int) -> np.ndarray:
    k = np.arange(1, order + 1)
    x = np.cos((2 * k - 1) * np.pi / (2 * order))
    for _ in range(100):
        val, der = _legendre_and_derivative(order, x)
        dx = val / der
        x = x - dx
        if np.max(np.abs(dx)) < 1e-14:
            return x
    raise QuadratureError(f"Newton iteration for {order} Gauss nodes did not converge")


@lru_cache(maxsize=32)
@_working_precision
def gauss_rule(order: int) -> GaussRule:
    """Gauss-Legendre rule with ``order`` nodes on (-1, 1).

    Nodes are the roots of L_order, found by Newton iteration from the
    Chebyshev points in double precision and then polished by Newton steps in
    working precision; weights are 2 / ((1 - x^2) L_order'(x)^2).
    """
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    x = _as_mp(np.sort(_newton_nodes(order)))
    tol = mpmath.mpf(10) ** (-WORKING_DPS + 3)
    for _ in range(8):
        val, der = _legendre_and_derivative(order, x)
        dx = val / der
        x = x - dx
        if max(abs(v) for v in dx) < tol:
            break
    else:
        raise QuadratureError(f"Gauss node refinement for order {order} did not converge")
    _, der = _legendre_and_derivative(order, x)
    w = 2 / ((1 - x * x) * der * der)
    return GaussRule(order, x, w)


def default_quad_order(p: int) -> int:
    # the floor resolves |runge|_10 to ~1e-13; 128 nodes leave 5e-6
    return max(p + 24, 192)


# ---------------------------------------------------------------------------
# sample functions


@dataclass(frozen=True)
class SampleFunction:
    """A test function with closed-form derivatives up to ``max_order``.

    ``derivative(d, x)`` maps an object array of mpmath numbers to the d-th
    derivative values.
    """

    name: str
    derivative: Callable[[int, np.ndarray], np.ndarray]
    max_order: int

    @_working_precision
    def eval(self, d: int, x):
        if d < 0 or d > self.max_order:
            raise ValueError(f"{self.name}: derivative order {d} outside 0..{self.max_order}")
        if np.ndim(x) == 0:
            return self.derivative(d, np.array([_as_mp(x)], dtype=object))[0]
        return self.derivative(d, _as_mp(np.asarray(x)))

    def __call__(self, x):
        return self.eval(0, x)


_vexp = np.frompyfunc(mpmath.exp, 1, 1)
_vsin = np.frompyfunc(mpmath.sin, 1, 1)
_vim = np.frompyfunc(mpmath.im, 1, 1)


def _exp(d, x):
    return _vexp(x)


def _sin3(d, x):
    return 3**d * _vsin(3 * x + d * mp.pi / 2)


def _runge(d, x):
    # 1/(1+25x^2) = Im(1/(x - i/5)) / 5
    z = x - mpmath.mpc(0, mpmath.mpf(1) / 5)
    return math.factorial(d) * (-1) ** d * _vim(z ** (-(d + 1))) / 5


def _power72(d, x):
    e = mpmath.mpf(7) / 2
    c = math.prod(e - j for j in range(d)) if d else mpmath.mpf(1)
    return c * (1 + x) ** (e - d)


SAMPLE_FUNCTIONS: dict[str, SampleFunction] = {
    "exp": SampleFunction("exp", _exp, 64),
    "sin3": SampleFunction("sin3", _sin3, 64),
    "runge": SampleFunction("runge", _runge, 40),
    # (1+x)^{7/2} lies in H^3 but not H^4
    "power72": SampleFunction("power72", _power72, 3),
}


def get_function(name: str) -> SampleFunction:
    try:
        return SAMPLE_FUNCTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown sample function {name!r}; choose from {sorted(SAMPLE_FUNCTIONS)}"
        ) from None


def polynomial_function(series: LegendreSeries, name: str = "poly") -> SampleFunction:
    """Wrap a Legendre series as a sample function with all derivatives."""
    derivs: list[LegendreSeries] = [series]

    def derivative(d, x):
        while len(derivs) <= d:
            derivs.append(series_derivative(derivs[-1]))
        return series_eval(derivs[d], x) + 0 * x

    return SampleFunction(name, derivative, 10**6)


# ---------------------------------------------------------------------------
# projection and interpolation


@dataclass(frozen=True)
class ProjectionResult:
    """pi_p w as its coefficients b_0..b_p (mpmath numbers)."""

    series: LegendreSeries
    p: int

    @property
    def coeffs(self) -> np.ndarray:
        c = np.zeros(self.p + 1)
        c[: len(self.series)] = [float(v) for v in self.series.coeffs]
        return c

    def norm_sq(self) -> float:
        """Parseval: sum of b_i^2 * 2/(2i+1)."""
        return float(sum(c * c * 2 / (2 * j + 1) for j, c in enumerate(self.series.coeffs)))


def _project_values(values: np.ndarray, p: int, rule: GaussRule) -> LegendreSeries:
    vander = npleg.legvander(rule.nodes, p)
    weighted = rule.weights * values
    return LegendreSeries(
        mpmath.fsum(vander[:, i] * weighted) * (2 * i + 1) / 2 for i in range(p + 1)
    )


@lru_cache(maxsize=1024)
@_working_precision
def _project_cached(f: SampleFunction, p: int, order: int) -> ProjectionResult:
    rule = gauss_rule(order)
    return ProjectionResult(_project_values(f.eval(0, rule.nodes), p, rule), p)


def project(f: SampleFunction, p: int, rule: GaussRule | None = None) -> ProjectionResult:
    """pi_p f, with b_i = (2i+1)/2 <f, L_i> evaluated by ``rule``."""
    if p < 0:
        raise ValueError(f"degree must be >= 0, got {p}")
    order = rule.order if rule is not None else default_quad_order(p)
    return _project_cached(f, p, order)


def project_exact(a: LegendreSeries, p: int) -> LegendreSeries:
    """pi_p of a polynomial: keep the Legendre coefficients 0..p."""
    return a.truncate(p)


@_working_precision
def interpolant(
    f: SampleFunction, p: int, k: int, rule: GaussRule | None = None
) -> LegendreSeries:
    """I_{p,k} f: k-th derivative pi_{p-k}(f^(k)), and f^(i)(-1) matched for i < k."""
    if k < 0 or p < k:
        raise ValueError(f"interpolant needs p >= k >= 0, got p={p}, k={k}")
    if k > f.max_order:
        raise ValueError(f"{f.name} has derivatives only up to order {f.max_order}")
    rule = rule or gauss_rule(default_quad_order(p))
    top = _project_values(f.eval(k, rule.nodes), p - k, rule)
    result = series_antiderivative(top, k)
    # (1+x)^j / j! has i-th derivative delta_ij at -1
    basis = legendre(0)
    for j in range(k):
        result = result + basis * f.eval(j, -1)
        basis = series_antiderivative(basis)
    return result


@_working_precision
def sobolev_seminorm(f: SampleFunction, s: int, rule: GaussRule | None = None) -> float:
    """|f|_s = ||f^(s)||_0."""
    rule = rule or gauss_rule(default_quad_order(0))
    v = f.eval(s, rule.nodes)
    return float(mpmath.sqrt(rule.integrate(v * v)))


@_working_precision
def seminorm_of_difference(
    f: SampleFunction, g: LegendreSeries, nu: int, rule: GaussRule | None = None
) -> float:
    """|f - g|_nu for a polynomial g."""
    rule = rule or gauss_rule(default_quad_order(len(g)))
    diff = f.eval(nu, rule.nodes) - series_eval(series_derivative(g, nu), rule.nodes)
    return float(mpmath.sqrt(rule.integrate(diff * diff)))


def error_seminorm(
    f: SampleFunction, p: int, nu: int, rule: GaussRule | None = None
) -> float:
    """|f - pi_p f|_nu."""
    rule = rule or gauss_rule(default_quad_order(p))
    return seminorm_of_difference(f, project(f, p, rule).series, nu, rule)


@_working_precision
def error_trace(
    f: SampleFunction, p: int, nu: int, sign: int, rule: GaussRule | None = None
) -> float:
    """|f^(nu)(sign) - (pi_p f)^(nu)(sign)|."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    approx = endpoint_derivative(project(f, p, rule).series, nu, sign)
    return float(abs(f.eval(nu, sign) - approx))


@_working_precision
def quadrature_inner_product(a: LegendreSeries, b: LegendreSeries,
                             rule: GaussRule | None = None) -> float:
    """<a, b> by Gauss quadrature; exact up to rounding when the rule has enough nodes."""
    rule = rule or gauss_rule(max(len(a) + len(b), 1))
    xa = series_eval(LegendreSeries(mp.mpf(c.numerator) / c.denominator for c in a.coeffs), rule.nodes)
    xb = series_eval(LegendreSeries(mp.mpf(c.numerator) / c.denominator for c in b.coeffs), rule.nodes)
    return float(rule.integrate(xa * xb))


def random_rational_series(rng: np.random.Generator, max_degree: int = 30) -> LegendreSeries:
    """Random rational coefficients num/den with |num| <= 1000, 1 <= den <= 50."""
    deg = int(rng.integers(0, max_degree + 1))
    nums = rng.integers(-1000, 1001, size=deg + 1)
    dens = rng.integers(1, 51, size=deg + 1)
    return LegendreSeries(Fraction(int(n), int(d)) for n, d in zip(nums, dens))
