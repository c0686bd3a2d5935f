"""Polynomials stored by their coefficients in the Legendre basis.

A :class:`LegendreSeries` holds ``b_0, b_1, ...`` with ``sum_j b_j L_j(x)``.
Coefficients are :class:`fractions.Fraction` for all exact work; the same
class also carries float or mpmath coefficients for projections of sampled
functions.
Every operation here is linear in the coefficients and never rounds when the
input is exact.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Iterable

import mpmath
import numpy as np
from numpy.polynomial import legendre as npleg

from ._exact import factorial_ratio, format_rational, parse_rational

__all__ = [
    "LegendreSeries",
    "legendre",
    "legendre_norm_sq",
    "series_inner_product",
    "series_derivative",
    "series_antiderivative",
    "series_eval",
    "endpoint_derivative",
    "legendre_endpoint_derivative",
]


class LegendreSeries:
    """Immutable polynomial in the Legendre basis.

    Trailing zero coefficients are dropped, so ``coeffs == ()`` is the zero
    polynomial and ``len(coeffs) - 1`` is the degree otherwise.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        terms = list(coeffs)
        while terms and terms[-1] == 0:
            terms.pop()
        object.__setattr__(self, "coeffs", tuple(terms))

    def __setattr__(self, name, value):
        raise AttributeError("LegendreSeries is immutable")

    @classmethod
    def from_terms(cls, terms: dict[int, Number]) -> "LegendreSeries":
        if not terms:
            return cls()
        coeffs = [Fraction(0)] * (max(terms) + 1)
        for j, c in terms.items():
            if j < 0:
                raise ValueError(f"negative Legendre index {j}")
            coeffs[j] += c
        return cls(coeffs)

    # -- structure -----------------------------------------------------
    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int):
        if j < 0:
            raise IndexError(j)
        return self.coeffs[j] if j < len(self.coeffs) else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        return self.hi

    @property
    def hi(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lo(self) -> int | None:
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return None

    def in_band(self, i: int, j: int) -> bool:
        """True when the series lies in span{L_i, ..., L_j}."""
        if self.is_zero:
            return True
        return i <= self.lo and self.hi <= j

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    def to_float(self) -> "LegendreSeries":
        return LegendreSeries(float(c) for c in self.coeffs)

    def truncate(self, p: int) -> "LegendreSeries":
        """Keep the coefficients of L_0 .. L_p."""
        if p < 0:
            return LegendreSeries()
        return LegendreSeries(self.coeffs[: p + 1])

    # -- linear algebra ------------------------------------------------
    def __add__(self, other: "LegendreSeries") -> "LegendreSeries":
        if not isinstance(other, LegendreSeries):
            return NotImplemented
        n = max(len(self), len(other))
        return LegendreSeries(self[j] + other[j] for j in range(n))

    def __sub__(self, other: "LegendreSeries") -> "LegendreSeries":
        if not isinstance(other, LegendreSeries):
            return NotImplemented
        n = max(len(self), len(other))
        return LegendreSeries(self[j] - other[j] for j in range(n))

    def __neg__(self) -> "LegendreSeries":
        return LegendreSeries(-c for c in self.coeffs)

    def __mul__(self, scalar) -> "LegendreSeries":
        if isinstance(scalar, LegendreSeries):
            return NotImplemented
        return LegendreSeries(c * scalar for c in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LegendreSeries":
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return LegendreSeries(c / scalar for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LegendreSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "LegendreSeries(0)"
        terms = " + ".join(f"({c})*L{j}" for j, c in enumerate(self.coeffs) if c != 0)
        return f"LegendreSeries({terms})"

    # -- text format ---------------------------------------------------
    def to_text(self) -> str:
        """One ``j<TAB>num/den`` line per nonzero coefficient, ascending."""
        lines = [f"{j}\t{format_rational(c)}" for j, c in enumerate(self.coeffs) if c != 0]
        return "".join(line + "\n" for line in lines)

    @classmethod
    def from_text(cls, text: str) -> "LegendreSeries":
        terms = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            j, value = line.split("\t")
            terms[int(j)] = parse_rational(value)
        return cls.from_terms(terms)


def legendre(i: int) -> LegendreSeries:
    """The Legendre polynomial L_i as a series."""
    if i < 0:
        raise ValueError(f"Legendre degree must be >= 0, got {i}")
    return LegendreSeries([Fraction(0)] * i + [Fraction(1)])


def legendre_norm_sq(i: int) -> Fraction:
    if i < 0:
        raise ValueError(f"Legendre degree must be >= 0, got {i}")
    return Fraction(2, 2 * i + 1)


def series_inner_product(a: LegendreSeries, b: LegendreSeries):
    """L2(-1, 1) inner product, using orthogonality of the basis."""
    n = min(len(a), len(b))
    total = Fraction(0)
    for j in range(n):
        total += a.coeffs[j] * b.coeffs[j] * Fraction(2, 2 * j + 1)
    return total


def series_derivative(a: LegendreSeries, order: int = 1) -> LegendreSeries:
    """Exact derivative, from L_i' = sum_{j<i, i-j odd} (2j+1) L_j."""
    for _ in range(order):
        if len(a) <= 1:
            return LegendreSeries()
        c = a.coeffs
        n = len(c)
        out = [0] * (n - 1)
        # tail[m] = c[m] + c[m+2] + ...
        tail = [0] * (n + 2)
        for m in range(n - 1, -1, -1):
            tail[m] = c[m] + tail[m + 2]
        for j in range(n - 1):
            out[j] = (2 * j + 1) * tail[j + 1]
        a = LegendreSeries(out)
    return a


def series_antiderivative(a: LegendreSeries, order: int = 1) -> LegendreSeries:
    """Primitive vanishing at -1.

    Uses int_{-1}^x L_i = (L_{i+1} - L_{i-1}) / (2i+1) for i >= 1 and
    int_{-1}^x L_0 = L_0 + L_1.
    """
    for _ in range(order):
        c = a.coeffs
        if not c:
            return a
        out = [0] * (len(c) + 1)
        out[0] += c[0]
        out[1] += c[0]
        for i in range(1, len(c)):
            w = Fraction(c[i], 2 * i + 1) if isinstance(c[i], (int, Fraction)) else c[i] / (2 * i + 1)
            out[i + 1] += w
            out[i - 1] -= w
        a = LegendreSeries(out)
    return a


def _to_mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return c


def series_eval(a: LegendreSeries, x):
    """Value at ``x`` (scalar or array) by Clenshaw recurrence.

    Rational and float coefficients are evaluated in double precision;
    mpmath coefficients (or an object array ``x``) keep their precision.
    """
    x_obj = isinstance(x, np.ndarray) and x.dtype == object
    if x_obj or not all(isinstance(c, (int, float, Fraction)) for c in a.coeffs):
        coeffs = np.array([_to_mp(c) for c in a.coeffs] or [0], dtype=object)
        return npleg.legval(x, coeffs)
    if a.is_zero:
        return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
    coeffs = np.array([float(c) for c in a.coeffs])
    return npleg.legval(x, coeffs)


def legendre_endpoint_derivative(i: int, k: int, sign: int) -> Fraction:
    """L_i^(k)(sign) = sign^(i+k) (i+k)! / (2^k k! (i-k)!), zero for k > i."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k > i:
        return Fraction(0)
    value = factorial_ratio(i + k, i - k) / (2**k * factorial_ratio(k, 0))
    return value if sign == 1 or (i + k) % 2 == 0 else -value


def endpoint_derivative(a: LegendreSeries, k: int, sign: int):
    """Value of the k-th derivative of ``a`` at ``sign`` (+1 or -1).

    Exact for rational series; float coefficients give a float.
    """
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    total = Fraction(0)
    for i in range(k, len(a)):
        c = a.coeffs[i]
        if c != 0:
            total += c * legendre_endpoint_derivative(i, k, sign)
    return total

