"""Boundary-adapted polynomials q_{p,nu}.

q_{p,0} = (L_p + L_{p+1}) / 2 takes the value 1 at x=1 and 0 at x=-1.  Each
step adds multiples of psi_{p,nu+1} and psi_{p+1,nu+1}; those primitives have
vanishing traces up to order nu, so only the two new conditions
q^(nu+1)(+-1) = 0 have to be enforced.  The coefficients are found by solving
that 2x2 system in rationals; the closed forms below are checked against the
solved values, never used to build q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ._exact import factorial_ratio
from .integrated_legendre import psi
from .legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    legendre,
    series_inner_product,
)

__all__ = [
    "QPoly",
    "q_base",
    "q_next",
    "q_poly",
    "q_endpoint_closed",
    "alpha_beta_closed",
    "wz_sum",
    "wz_sum_printed",
    "wz_closed",
    "q_norm_sq",
    "q1_norm_sq_closed",
    "q0_norm_sq_closed",
    "interface_defects",
    "growth_scan",
]


@dataclass(frozen=True)
class QPoly:
    p: int
    nu: int
    series: LegendreSeries
    coefficients: tuple[tuple[Fraction, Fraction], ...] = field(default=())
    """``(alpha_{p,k}, beta_{p,k})`` for k = 1..nu, in construction order."""

    @property
    def band(self) -> tuple[int, int]:
        return self.p - self.nu, self.p + self.nu + 1


def q_base(p: int) -> QPoly:
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    return QPoly(p, 0, (legendre(p) + legendre(p + 1)) / 2)


def _solve_2x2(a11, a12, a21, a22, b1, b2) -> tuple[Fraction, Fraction]:
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ZeroDivisionError("singular endpoint system")
    return (b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det


def q_next(q: QPoly) -> QPoly:
    """Raise the order of q by one, enforcing q^(nu+1)(+-1) = 0."""
    p, m = q.p, q.nu + 1
    if p < m:
        raise ValueError(f"q_next needs p >= nu+1, got p={p}, nu+1={m}")
    lo, hi = psi(p, m), psi(p + 1, m)
    alpha, beta = _solve_2x2(
        endpoint_derivative(lo, m, 1), endpoint_derivative(hi, m, 1),
        endpoint_derivative(lo, m, -1), endpoint_derivative(hi, m, -1),
        -endpoint_derivative(q.series, m, 1), -endpoint_derivative(q.series, m, -1),
    )
    series = q.series + lo * alpha + hi * beta
    return QPoly(p, m, series, q.coefficients + ((alpha, beta),))


@lru_cache(maxsize=None)
def q_poly(p: int, nu: int) -> QPoly:
    """q_{p,nu} for 0 <= nu <= p, built by repeated :func:`q_next`."""
    if nu < 0 or p < nu:
        raise ValueError(f"q_{{p,nu}} needs 0 <= nu <= p, got p={p}, nu={nu}")
    if nu == 0:
        return q_base(p)
    return q_next(q_poly(p, nu - 1))


def _require(p: int, nu: int, nu_min: int = 1) -> None:
    if nu < nu_min or p < nu:
        raise ValueError(f"need p >= nu >= {nu_min}, got p={p}, nu={nu}")


def _endpoint_scale(nu: int) -> Fraction:
    # 1 / ((-2)^(nu+1) nu!)
    return Fraction(1, (-2) ** (nu + 1)) / factorial_ratio(nu, 0)


def q_endpoint_closed(p: int, nu: int) -> tuple[Fraction, Fraction]:
    """Closed form of (q_{p,nu-1}^(nu)(1), q_{p,nu-1}^(nu)(-1))."""
    _require(p, nu)
    a = factorial_ratio(p + 1 + nu, p + 1 - nu)
    b = factorial_ratio(p + nu, p - nu)
    c = _endpoint_scale(nu)
    plus = c * (a + b)
    minus = c * (a - b) * (-1) ** p
    return plus, minus


def alpha_beta_closed(p: int, nu: int) -> tuple[Fraction, Fraction]:
    _require(p, nu)
    c = -_endpoint_scale(nu)
    return c * factorial_ratio(p + 1 + nu, p + 1 - nu), c * factorial_ratio(p + nu, p - nu)


def _wz_terms(p: int, nu: int):
    for k in range(1, nu + 1):
        term = (
            Fraction(1, 2 ** (nu + 2))
            / factorial_ratio(k, 0)
            / factorial_ratio(nu + 1 - k, 0)
            * factorial_ratio(p + k, p - k)
            * factorial_ratio(p + 1 + nu - k, p - nu - 1 + k)
            * (Fraction(p + 1 + k, p + 1 - k) + Fraction(p + nu + 2 - k, p - nu + k))
        )
        yield k, term


def wz_sum_printed(p: int, nu: int) -> Fraction:
    """Direct sum with summand sign (-1)^k, as the sum is usually printed.

    This equals ``-wz_closed(p, nu)``; see :func:`wz_sum`.
    """
    _require(p, nu)
    return sum((t if k % 2 == 0 else -t for k, t in _wz_terms(p, nu)), Fraction(0))


def wz_sum(p: int, nu: int) -> Fraction:
    """Direct summation of S = q_{p,0}^(nu+1)(1) - q_{p,nu}^(nu+1)(1).

    Expanding the recursion for q gives
    S = sum_{k=1}^{nu} (-1)^(k+1) / (k! 2^(nu+2) (nu+1-k)!) (p+k)!/(p-k)!
        (p+1+nu-k)!/(p-nu-1+k)! [(p+1+k)/(p+1-k) + (p+nu+2-k)/(p-nu+k)].
    """
    return -wz_sum_printed(p, nu)


def wz_closed(p: int, nu: int) -> Fraction:
    """Closed form -(1/2)(p+1)(p+nu+1)! / ((p-nu)! 2^nu (nu+1)!) ((-1)^nu - 1)."""
    _require(p, nu)
    if nu % 2 == 0:
        return Fraction(0)
    # ((-1)^nu - 1) = -2 for odd nu
    return (p + 1) * factorial_ratio(p + nu + 1, p - nu) / (2**nu * factorial_ratio(nu + 1, 0))


def q_norm_sq(q: QPoly | LegendreSeries) -> Fraction:
    s = q.series if isinstance(q, QPoly) else q
    return series_inner_product(s, s)


def q0_norm_sq_closed(p: int) -> Fraction:
    return Fraction(2 * (p + 1), (2 * p + 1) * (2 * p + 3))


def q1_norm_sq_closed(p: int) -> Fraction:
    """p(p+1)(p+2)(p^2+2p+10) / ((2p-1)(2p+1)(2p+3)(2p+5))."""
    return Fraction(
        p * (p + 1) * (p + 2) * (p * p + 2 * p + 10),
        (2 * p - 1) * (2 * p + 1) * (2 * p + 3) * (2 * p + 5),
    )


def interface_defects(q: QPoly) -> dict[str, Fraction]:
    """Residuals of every condition q must satisfy; all zero for a valid q.

    Keys: ``value(+1)``, ``value(-1)``, ``d{i}(+1)``, ``d{i}(-1)`` for
    i = 1..nu, and ``band`` (the largest coefficient outside the band, as an
    absolute value).
    """
    s = q.series
    out = {
        "value(+1)": endpoint_derivative(s, 0, 1) - 1,
        "value(-1)": endpoint_derivative(s, 0, -1),
    }
    for i in range(1, q.nu + 1):
        out[f"d{i}(+1)"] = endpoint_derivative(s, i, 1)
        out[f"d{i}(-1)"] = endpoint_derivative(s, i, -1)
    lo, hi = q.band
    outside = [abs(c) for j, c in enumerate(s.coeffs) if not lo <= j <= hi]
    out["band"] = max(outside, default=Fraction(0))
    return out


def growth_scan(nu: int, p_values) -> list[tuple[int, Fraction, float]]:
    """Rows ``(p, ||q_{p,nu}||^2, ||q_{p,nu}||^2 / p^(2nu-1))``.

    p = 0 is excluded since p^(2nu-1) is undefined there for nu = 0.
    """
    rows = []
    for p in p_values:
        if p < max(nu, 1):
            raise ValueError(f"growth scan needs p >= max(nu, 1), got p={p}, nu={nu}")
        n2 = q_norm_sq(q_poly(p, nu))
        rows.append((p, n2, float(n2 / Fraction(p) ** (2 * nu - 1))))
    return rows
