"""Integrated Legendre polynomials psi_{i,n} and their closed forms.

``psi(i, n)`` is the n-fold primitive of L_i anchored at -1.  It is built from
the three-term relation

    psi_{i,n} = (psi_{i+1,n-1} - psi_{i-1,n-1}) / (2i + 1),   i >= n >= 1,

which keeps every primitive inside span{L_{i-n}, ..., L_{i+n}}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._exact import factorial_ratio
from .legendre_core import (
    LegendreSeries,
    legendre,
    series_antiderivative,
    series_inner_product,
)

__all__ = [
    "PsiIndex",
    "psi",
    "primitive",
    "psi_norm_sq_closed",
    "psi_inner_closed",
    "psi_endpoint",
    "certify_psi_inner",
]


@dataclass(frozen=True)
class PsiIndex:
    i: int
    n: int

    def __post_init__(self):
        if self.n < 0 or self.i < self.n:
            raise ValueError(f"psi index needs i >= n >= 0, got i={self.i}, n={self.n}")


def _check(i: int, n: int) -> None:
    PsiIndex(i, n)


@lru_cache(maxsize=None)
def _psi(i: int, n: int) -> LegendreSeries:
    if n == 0:
        return legendre(i)
    return (_psi(i + 1, n - 1) - _psi(i - 1, n - 1)) / (2 * i + 1)


def psi(i: int | PsiIndex, n: int | None = None) -> LegendreSeries:
    """n-th primitive of L_i, exact.  Accepts ``psi(i, n)`` or ``psi(PsiIndex)``."""
    if isinstance(i, PsiIndex):
        i, n = i.i, i.n
    _check(i, n)
    return _psi(i, n)


@lru_cache(maxsize=None)
def _primitive(i: int, n: int) -> LegendreSeries:
    if i >= n:
        return _psi(i, n)
    return series_antiderivative(_primitive(i, n - 1))


def primitive(i: int, n: int) -> LegendreSeries:
    """n-th primitive of L_i for any i >= 0.

    Below the diagonal (i < n) the three-term relation does not apply and the
    primitive is integrated directly from the one of order n - 1.
    """
    if i < 0 or n < 0:
        raise ValueError(f"primitive index needs i, n >= 0, got i={i}, n={n}")
    return _primitive(i, n)


def _product_term(p: int, n: int) -> Fraction:
    # 1/(2p+1) * prod_{k=1}^{n} (2k-1) / ((2p+1)^2 - 4k^2)
    value = Fraction(1, 2 * p + 1)
    t = (2 * p + 1) ** 2
    for k in range(1, n + 1):
        value *= Fraction(2 * k - 1, t - 4 * k * k)
    return value


def psi_norm_sq_closed(p: int, n: int) -> Fraction:
    """Closed form of ||psi_{p,n}||^2 for p >= n."""
    _check(p, n)
    return Fraction(2 ** (n + 1)) / factorial_ratio(n, 0) * _product_term(p, n)


def psi_inner_closed(p: int, k: int, n: int) -> Fraction:
    """Closed form of <psi_{p+k,n}, psi_{p-k,n}> for p >= n and 0 <= k <= p.

    Nonzero only for k <= n, where it equals
    (-1)^k 2^(n+1) n! / ((n+k)! (n-k)!) times the norm product.
    """
    _check(p, n)
    if not 0 <= k <= p:
        raise ValueError(f"offset k must satisfy 0 <= k <= p, got k={k}, p={p}")
    if k > n:
        return Fraction(0)
    scale = Fraction(2 ** (n + 1)) * factorial_ratio(n, n + k) / factorial_ratio(n - k, 0)
    value = scale * _product_term(p, n)
    return -value if k % 2 else value


def psi_endpoint(idx: PsiIndex | tuple[int, int], nu: int, sign: int) -> Fraction:
    """Closed-form value of psi_{i,n}^(nu)(sign)."""
    if not isinstance(idx, PsiIndex):
        idx = PsiIndex(*idx)
    if nu < 0:
        raise ValueError(f"derivative order must be >= 0, got {nu}")
    i, n = idx.i, idx.n
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    m = nu - n
    if m < 0 or m > i:
        return Fraction(0)
    value = factorial_ratio(i + m, i - m) / (2**m * factorial_ratio(m, 0))
    return -value if sign == -1 and (i + n - nu) % 2 else value


def certify_psi_inner(p_max: int = 20, n_max: int = 5):
    """Yield ``(p, k, n, closed, constructive)`` for the full (p, k, n) grid."""
    for n in range(n_max + 1):
        for p in range(n, p_max + 1):
            for k in range(p + 1):
                closed = psi_inner_closed(p, k, n)
                direct = series_inner_product(psi(p + k, n), primitive(p - k, n))
                yield p, k, n, closed, direct
