"""Measured projection errors against their a-priori upper bounds.

Every bound is compared in squared form: ``lhs`` is the squared error
quantity, ``rhs`` the squared bound, ``ratio = lhs / rhs``.  Bounds with an
explicit constant pass when ``ratio <= 1 + 1e-9``.  Bounds stated with a
generic constant C are evaluated with C = 1; a single report then only says
whether the ratio is finite, and the boundedness question is answered over
a whole p-sweep by :func:`ratio_tail_growth`.

Factorial ratios are exact :class:`Fraction` values; conversion to float is
the last step before multiplying by a measured seminorm.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from ._exact import factorial_ratio
from .legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    series_antiderivative,
)
from .projection import (
    QuadratureError,
    SampleFunction,
    default_quad_order,
    error_seminorm,
    error_trace,
    gauss_rule,
    interpolant,
    project_exact,
    seminorm_of_difference,
    sobolev_seminorm,
)
from .qfamily import q_norm_sq, q_poly

log = logging.getLogger(__name__)

__all__ = [
    "BoundKind",
    "BoundReport",
    "EXPLICIT_KINDS",
    "RATIO_TOL",
    "SATURATION_RTOL",
    "rhs_l2",
    "rhs_trace_houston",
    "rhs_trace_main",
    "rhs_trace_main_proof",
    "rhs_trace_corollary",
    "rhs_deriv_seminorm",
    "rhs_beirao",
    "check_bound",
    "sharpness_case",
    "beirao_ratio_scan",
    "explicit_sweep",
    "generic_sweep",
    "ratio_tail_growth",
]

RATIO_TOL = 1e-9
SATURATION_RTOL = 1e-9


class BoundKind(str, Enum):
    L2_PROJ = "L2_PROJ"
    TRACE_HOUSTON = "TRACE_HOUSTON"
    DERIV_SEMINORM = "DERIV_SEMINORM"
    TRACE_MAIN = "TRACE_MAIN"
    TRACE_COROLLARY = "TRACE_COROLLARY"
    # (p-nu-s)!/(p-nu+s)! in place of (p-nu-s)!/(p+nu+s)!
    TRACE_MAIN_PROOF = "TRACE_MAIN_PROOF"
    INTERP_BEIRAO = "INTERP_BEIRAO"


EXPLICIT_KINDS = frozenset(
    {BoundKind.L2_PROJ, BoundKind.TRACE_HOUSTON, BoundKind.TRACE_MAIN, BoundKind.TRACE_MAIN_PROOF}
)


@dataclass(frozen=True)
class BoundReport:
    kind: BoundKind
    function: str
    p: int
    s: int
    nu: int
    lhs: float
    rhs: float
    ratio: float
    passed: bool

    @property
    def explicit(self) -> bool:
        return self.kind in EXPLICIT_KINDS


# ---------------------------------------------------------------------------
# right-hand sides


def _fail(msg: str):
    raise ValueError(msg)


def l2_scale(p: int, s: int) -> Fraction:
    if not 0 <= s <= p + 1:
        _fail(f"L2 bound needs 0 <= s <= p+1, got p={p}, s={s}")
    return factorial_ratio(p + 1 - s, p + 1 + s)


def rhs_l2(p: int, s: int, seminorm: float) -> float:
    """(p+1-s)!/(p+1+s)! |w|_s^2."""
    return float(l2_scale(p, s)) * seminorm**2


def houston_scale(p: int, s: int) -> Fraction:
    if not 0 <= s <= p:
        _fail(f"trace bound needs 0 <= s <= p, got p={p}, s={s}")
    return Fraction(1, 2 * p + 1) * factorial_ratio(p - s, p + s)


def rhs_trace_houston(p: int, s: int, seminorm: float) -> float:
    """1/(2p+1) (p-s)!/(p+s)! |w|_{s+1}^2."""
    return float(houston_scale(p, s)) * seminorm**2


def _main_checks(p: int, s: int, nu: int) -> None:
    if nu < 0 or p <= nu:
        _fail(f"trace bound needs p > nu >= 0, got p={p}, nu={nu}")
    if not 0 <= s <= p - nu:
        _fail(f"trace bound needs 0 <= s <= p-nu, got p={p}, nu={nu}, s={s}")


def main_scale(p: int, s: int, nu: int, qnorm_sq: Fraction | None = None) -> Fraction:
    _main_checks(p, s, nu)
    if qnorm_sq is None:
        qnorm_sq = q_norm_sq(q_poly(p, nu))
    return qnorm_sq * factorial_ratio(p - nu - s, p + nu + s)


def rhs_trace_main(
    p: int, s: int, nu: int, qnorm_sq: Fraction | None, seminorm: float
) -> float:
    """||q_{p,nu}||^2 (p-nu-s)!/(p+nu+s)! |w|_{s+nu+1}^2."""
    return float(main_scale(p, s, nu, qnorm_sq)) * seminorm**2


def main_proof_scale(p: int, s: int, nu: int, qnorm_sq: Fraction | None = None) -> Fraction:
    _main_checks(p, s, nu)
    if qnorm_sq is None:
        qnorm_sq = q_norm_sq(q_poly(p, nu))
    return qnorm_sq * factorial_ratio(p - nu - s, p - nu + s)


def rhs_trace_main_proof(
    p: int, s: int, nu: int, qnorm_sq: Fraction | None, seminorm: float
) -> float:
    """||q_{p,nu}||^2 (p-nu-s)!/(p-nu+s)! |w|_{s+nu+1}^2.

    The endpoint estimate combined with the L2 bound applied to w^(nu+1) at degree
    p-nu-1.
    """
    return float(main_proof_scale(p, s, nu, qnorm_sq)) * seminorm**2


def rhs_trace_corollary(p: int, s: int, nu: int, seminorm: float) -> float:
    """p^(2nu-1) (p-nu-s)!/(p+nu+s)! |w|_{s+nu+1}^2, generic constant set to 1."""
    _main_checks(p, s, nu)
    scale = Fraction(p) ** (2 * nu - 1) * factorial_ratio(p - nu - s, p + nu + s)
    return float(scale) * seminorm**2


def rhs_deriv_seminorm(p: int, s: int, nu: int, seminorm: float) -> float:
    """2^(2nu-1) p^(2nu-1) (p-s)!/(p+s)! |w|_{s+nu}^2, generic constant set to 1."""
    if nu < 0 or p < nu or p < 1:
        _fail(f"derivative bound needs p >= nu >= 0 and p >= 1, got p={p}, nu={nu}")
    if not 0 <= s <= p:
        _fail(f"derivative bound needs 0 <= s <= p, got p={p}, s={s}")
    scale = Fraction(2 * p) ** (2 * nu - 1) * factorial_ratio(p - s, p + s)
    return float(scale) * seminorm**2


def rhs_beirao(p: int, k: int, j: int, s: int, seminorm: float) -> float:
    """((kappa-s)!/(kappa+s)!) ((kappa-(k-j))!/(kappa+(k-j))!) |w|_{k+s}^2, kappa = p-k+1."""
    if k < 1 or p < 2 * k - 1:
        _fail(f"interpolation bound needs k >= 1 and p >= 2k-1, got p={p}, k={k}")
    if not 0 <= j <= k - 1:
        _fail(f"interpolation bound needs 0 <= j <= k-1, got j={j}, k={k}")
    kappa = p - k + 1
    if not 0 <= s <= kappa:
        _fail(f"interpolation bound needs 0 <= s <= p-k+1, got s={s}, p-k+1={kappa}")
    scale = factorial_ratio(kappa - s, kappa + s) * factorial_ratio(kappa - (k - j), kappa + (k - j))
    return float(scale) * seminorm**2


# ---------------------------------------------------------------------------
# single checks


def _saturated(a: float, b: float, scale: float) -> bool:
    return abs(a - b) <= SATURATION_RTOL * max(abs(a), abs(b)) + 1e-28 * (1.0 + scale)


@lru_cache(maxsize=4096)
def _seminorm(f: SampleFunction, d: int, order: int) -> float:
    return sobolev_seminorm(f, d, gauss_rule(order))


@lru_cache(maxsize=4096)
def _trace_lhs(f: SampleFunction, p: int, nu: int, order: int) -> float:
    rule = gauss_rule(order)
    return max(error_trace(f, p, nu, sg, rule) for sg in (1, -1)) ** 2


@lru_cache(maxsize=4096)
def _seminorm_lhs(f: SampleFunction, p: int, nu: int, order: int) -> float:
    return error_seminorm(f, p, nu, gauss_rule(order)) ** 2


@lru_cache(maxsize=4096)
def _interp_lhs(f: SampleFunction, p: int, k: int, j: int, order: int) -> float:
    rule = gauss_rule(order)
    return seminorm_of_difference(f, interpolant(f, p, k, rule), j, rule) ** 2


def _measure(kind: BoundKind, f: SampleFunction, p: int, s: int, nu: int, order: int,
             k: int | None = None):
    """Return (lhs, seminorm) for one quadrature order."""
    if kind is BoundKind.L2_PROJ:
        return _seminorm_lhs(f, p, 0, order), _seminorm(f, s, order)
    if kind is BoundKind.TRACE_HOUSTON:
        return _trace_lhs(f, p, 0, order), _seminorm(f, s + 1, order)
    if kind in (BoundKind.TRACE_MAIN, BoundKind.TRACE_MAIN_PROOF, BoundKind.TRACE_COROLLARY):
        return _trace_lhs(f, p, nu, order), _seminorm(f, s + nu + 1, order)
    if kind is BoundKind.DERIV_SEMINORM:
        return _seminorm_lhs(f, p, nu, order), _seminorm(f, s + nu, order)
    if kind is BoundKind.INTERP_BEIRAO:
        # nu carries the seminorm order j
        return _interp_lhs(f, p, k, nu, order), _seminorm(f, k + s, order)
    raise ValueError(f"unknown bound kind {kind!r}")


def _required_order(kind: BoundKind, s: int, nu: int, k: int | None) -> int:
    if kind is BoundKind.L2_PROJ:
        return s
    if kind is BoundKind.TRACE_HOUSTON:
        return s + 1
    if kind is BoundKind.DERIV_SEMINORM:
        return s + nu
    if kind is BoundKind.INTERP_BEIRAO:
        return k + s
    return s + nu + 1


def check_bound(
    f: SampleFunction,
    p: int,
    s: int,
    nu: int,
    kind: BoundKind | str,
    *,
    k: int | None = None,
    quad_order: int | None = None,
) -> BoundReport:
    """Measure one bound.

    For ``INTERP_BEIRAO`` the interpolation order is ``k`` and ``nu`` is the
    seminorm order j of the error.  Each measured quantity is recomputed with
    twice the quadrature order; a relative change above ``SATURATION_RTOL``
    raises :class:`QuadratureError`.
    """
    kind = BoundKind(kind)
    if kind is BoundKind.INTERP_BEIRAO and k is None:
        _fail("INTERP_BEIRAO needs the interpolation order k")
    need = _required_order(kind, s, nu, k)
    if need > f.max_order:
        _fail(f"{f.name} has derivatives only up to order {f.max_order}; bound needs |w|_{need}")

    # validates the parameter ranges before any quadrature
    if kind is BoundKind.L2_PROJ:
        scale = float(l2_scale(p, s))
    elif kind is BoundKind.TRACE_HOUSTON:
        scale = float(houston_scale(p, s))
    elif kind is BoundKind.TRACE_MAIN:
        scale = float(main_scale(p, s, nu))
    elif kind is BoundKind.TRACE_MAIN_PROOF:
        scale = float(main_proof_scale(p, s, nu))
    elif kind is BoundKind.TRACE_COROLLARY:
        if nu < 1:
            _fail(f"corollary needs nu >= 1, got nu={nu}")
        scale = rhs_trace_corollary(p, s, nu, 1.0)
    elif kind is BoundKind.DERIV_SEMINORM:
        scale = rhs_deriv_seminorm(p, s, nu, 1.0)
    else:
        scale = rhs_beirao(p, k, nu, s, 1.0)

    order = quad_order or default_quad_order(p)
    lhs, semi = _measure(kind, f, p, s, nu, order, k)
    lhs2, semi2 = _measure(kind, f, p, s, nu, 2 * order, k)
    if not (_saturated(lhs, lhs2, semi**2) and _saturated(semi, semi2, semi)):
        raise QuadratureError(
            f"{kind.value} {f.name} p={p} s={s} nu={nu}: quadrature not saturated "
            f"(lhs {lhs:.17g} vs {lhs2:.17g}, seminorm {semi:.17g} vs {semi2:.17g})"
        )
    rhs = scale * semi**2
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs <= 1e-28 else math.inf
    if kind in EXPLICIT_KINDS:
        passed = ratio <= 1 + RATIO_TOL
    else:
        passed = math.isfinite(ratio)
    return BoundReport(kind, f.name, p, s, nu, lhs, rhs, ratio, passed)


def sharpness_case(p: int, nu: int) -> tuple[LegendreSeries, Fraction]:
    """The function u with u^(nu+1) = q_{p,nu} and its equality gap.

    The endpoint estimate gives |(u - pi_p u)^(nu)(1)| <= ||q_{p,nu}|| |u|_{nu+1};
    here |u|_{nu+1} = ||q_{p,nu}||, so equality reads
    |(u - pi_p u)^(nu)(1)| = ||q_{p,nu}||^2.  Returns (u, |lhs - ||q||^2|),
    computed exactly.
    """
    if nu < 0 or p < nu:
        _fail(f"sharpness case needs 0 <= nu <= p, got p={p}, nu={nu}")
    q = q_poly(p, nu)
    u = series_antiderivative(q.series, nu + 1)
    err = u - project_exact(u, p)
    lhs = abs(endpoint_derivative(err, nu, 1))
    return u, abs(lhs - q_norm_sq(q))


def beirao_ratio_scan(
    f: SampleFunction, k: int, j: int, p_range: Iterable[int], s: int = 1,
    quad_order: int | None = None,
) -> list[BoundReport]:
    """|w - I_{p,k} w|_j^2 against the interpolation bound with C = 1, over p."""
    return [
        check_bound(f, p, s, j, BoundKind.INTERP_BEIRAO, k=k, quad_order=quad_order)
        for p in p_range
    ]


# ---------------------------------------------------------------------------
# sweeps


def _explicit_grid(f: SampleFunction, p_max: int, nu_max: int, s_max: int):
    reg = f.max_order
    for p in range(0, p_max + 1):
        for s in range(0, min(p + 1, reg, s_max) + 1):
            yield BoundKind.L2_PROJ, p, s, 0
        for s in range(0, min(p, reg - 1, s_max) + 1):
            yield BoundKind.TRACE_HOUSTON, p, s, 0
        for nu in range(0, nu_max + 1):
            if p <= nu:
                continue
            for s in range(0, min(p - nu, reg - nu - 1, s_max) + 1):
                yield BoundKind.TRACE_MAIN, p, s, nu
                yield BoundKind.TRACE_MAIN_PROOF, p, s, nu


def _generic_grid(f: SampleFunction, p_max: int, nu_max: int, s_max: int, k_max: int):
    reg = f.max_order
    for p in range(1, p_max + 1):
        for nu in range(0, nu_max + 1):
            # exists k with s < k, 2k-1 <= p, k+s <= reg; and s < p-nu
            for s in range(1, s_max + 1):
                if p >= 2 * s + 1 and 2 * s + 1 <= reg and s < p - nu and s + nu <= reg:
                    yield BoundKind.DERIV_SEMINORM, p, s, nu, None
        for nu in range(1, nu_max + 1):
            for s in range(1, s_max + 1):
                if s < p - nu and s + 1 <= reg and s + nu + 1 <= reg:
                    yield BoundKind.TRACE_COROLLARY, p, s, nu, None
        for k in range(1, k_max + 1):
            if p < 2 * k - 1:
                continue
            for j in range(0, k):
                for s in range(1, s_max + 1):
                    if s <= p - k + 1 and k + s <= reg:
                        yield BoundKind.INTERP_BEIRAO, p, s, j, k


def _guarded(task):
    try:
        return task()
    except QuadratureError as exc:
        log.warning("skipped: %s", exc)
        return None


def _run(tasks, threads: int):
    """Run in grid order; unsaturated cases are logged and dropped."""
    if threads <= 1:
        out = [_guarded(t) for t in tasks]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(_guarded, tasks))
    return [r for r in out if r is not None]


def explicit_sweep(
    functions: Sequence[SampleFunction], p_max: int = 20, nu_max: int = 3, s_max: int = 3,
    quad_order: int | None = None, threads: int = 1,
) -> list[BoundReport]:
    """All explicit-constant checks over the admissible grid, grid-ordered."""
    tasks = []
    for f in functions:
        for kind, p, s, nu in _explicit_grid(f, p_max, nu_max, s_max):
            tasks.append(
                lambda f=f, kind=kind, p=p, s=s, nu=nu: check_bound(
                    f, p, s, nu, kind, quad_order=quad_order
                )
            )
    return _run(tasks, threads)


def generic_sweep(
    functions: Sequence[SampleFunction], p_max: int = 20, nu_max: int = 3, s_max: int = 3,
    k_max: int = 3, quad_order: int | None = None, threads: int = 1,
) -> list[tuple[BoundReport, int | None]]:
    """Generic-constant ratio scans; rows are ``(report, k)``, k only for INTERP_BEIRAO."""
    tasks = []
    for f in functions:
        for kind, p, s, nu, k in _generic_grid(f, p_max, nu_max, s_max, k_max):
            tasks.append(
                lambda f=f, kind=kind, p=p, s=s, nu=nu, k=k: (
                    check_bound(f, p, s, nu, kind, k=k, quad_order=quad_order), k
                )
            )
    return _run(tasks, threads)


def ratio_tail_growth(ps: Sequence[int], ratios: Sequence[float]) -> float:
    """max ratio over the upper half of the p-range / max over the lower half.

    A value <= 1.05 means the sweep's supremum is not being pushed up by
    large p.  Returns ``inf`` if the lower half is identically zero while the
    upper half is not.
    """
    pairs = sorted(zip(ps, ratios))
    if len(pairs) < 2:
        return 0.0
    lo_p, hi_p = pairs[0][0], pairs[-1][0]
    mid = (lo_p + hi_p) / 2
    lower = max(r for p, r in pairs if p <= mid)
    upper = max((r for p, r in pairs if p > mid), default=0.0)
    if lower == 0:
        return 0.0 if upper == 0 else math.inf
    return upper / lower
