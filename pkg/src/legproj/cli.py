"""Command-line driver: identity certification, bound sweeps, coefficient dumps.

    legproj verify-identities [--p-max 20] [--n-max 5] [--nu-max 8] [--seed 0]
    legproj verify-bounds [--functions exp,sin3,runge] [--p-max 20] [--nu-max 3] [--s-max 3]
    legproj emit-poly q --p 2 --nu 1
    legproj emit-poly psi --i 1 --n 1
    legproj sweep-growth [--p-min 1] [--p-max 200] [--nu-max 4]

CSV goes to ``--out`` or stdout; progress and the first failure go to stderr.
Exit status: 0 success, 1 a verification failed, 2 bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import os
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from ._exact import format_rational
from .bound_checker import (
    BoundReport,
    explicit_sweep,
    generic_sweep,
    ratio_tail_growth,
    sharpness_case,
)
from .integrated_legendre import certify_psi_inner, primitive, psi, psi_norm_sq_closed
from .legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    legendre,
    series_antiderivative,
    series_inner_product,
)
from .projection import (
    QuadratureError,
    SAMPLE_FUNCTIONS,
    get_function,
    quadrature_inner_product,
    random_rational_series,
)
from .qfamily import (
    alpha_beta_closed,
    growth_scan,
    interface_defects,
    q0_norm_sq_closed,
    q1_norm_sq_closed,
    q_endpoint_closed,
    q_norm_sq,
    q_poly,
    wz_closed,
    wz_sum,
)

HEADER = ("kind", "function", "p", "s", "nu", "lhs", "rhs", "ratio", "pass")
DEFAULT_FUNCTIONS = ("exp", "sin3", "runge")
GROWTH_TOL = 1.05
QUAD_RTOL = 1e-12


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p_max: int = 20
    p_min: int = 0
    nu_max: int = 3
    n_max: int = 5
    s_max: int = 3
    functions: tuple[str, ...] = DEFAULT_FUNCTIONS
    out: str | None = None
    quad_order: int | None = None
    seed: int = 0
    skip_generic: bool = False
    inject_fault: bool = False
    # emit-poly
    family: str | None = None
    index: dict[str, int] = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("p_max", "nu_max", "n_max", "s_max", "p_min"):
            if getattr(self, name) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
        if self.quad_order is not None and self.quad_order < 1:
            raise UsageError("--quad-order must be >= 1")
        unknown = [f for f in self.functions if f not in SAMPLE_FUNCTIONS]
        if unknown:
            raise UsageError(
                f"unknown function(s) {', '.join(unknown)}; choose from {', '.join(sorted(SAMPLE_FUNCTIONS))}"
            )
        if not self.functions:
            raise UsageError("--functions is empty")


# ---------------------------------------------------------------------------
# CSV


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render_csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _ratio(lhs: Fraction, rhs: Fraction) -> float | None:
    return float(lhs / rhs) if rhs != 0 else None


def _threads() -> int:
    raw = os.environ.get("LEGPROJ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"LEGPROJ_THREADS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# verify-identities


def _series_gap(a: LegendreSeries, b: LegendreSeries) -> Fraction:
    d = a - b
    return max((abs(Fraction(c)) for c in d.coeffs), default=Fraction(0))


def _exact_row(kind, p, s, nu, lhs: Fraction, rhs: Fraction):
    return (kind, None, p, s, nu, lhs, rhs, _ratio(lhs, rhs), lhs == rhs)


def identity_rows(cfg: RunConfig) -> Iterator[tuple]:
    """Every exact identity instance, in grid order."""
    first = True
    for p, k, n, closed, direct in certify_psi_inner(cfg.p_max, cfg.n_max):
        if cfg.inject_fault and first:
            # perturb one coefficient of the left factor
            bad = psi(p + k, n) + legendre(p + k) * Fraction(1, 1000)
            direct = series_inner_product(bad, primitive(p - k, n))
        first = False
        yield _exact_row("PSI_INNER", p, k, n, closed, direct)
    for n in range(cfg.n_max + 1):
        for p in range(n, cfg.p_max + 1):
            s = psi(p, n)
            yield _exact_row("PSI_NORM", p, None, n, psi_norm_sq_closed(p, n), series_inner_product(s, s))
    for n in range(cfg.n_max + 1):
        for i in range(n, cfg.p_max + 1):
            gap = _series_gap(psi(i, n), series_antiderivative(legendre(i), n))
            yield _exact_row("PSI_PRIMITIVE", i, None, n, gap, Fraction(0))
    for p in range(cfg.p_max + 1):
        for nu in range(min(p, cfg.nu_max) + 1):
            q = q_poly(p, nu)
            gap = max(abs(v) for v in interface_defects(q).values())
            yield _exact_row("Q_INTERFACE", p, None, nu, gap, Fraction(0))
            if nu >= 1:
                ab = alpha_beta_closed(p, nu)
                solved = q.coefficients[-1]
                gap = max(abs(ab[0] - solved[0]), abs(ab[1] - solved[1]))
                yield _exact_row("Q_ALPHA_BETA", p, None, nu, gap, Fraction(0))
                prev = q_poly(p, nu - 1).series
                plus, minus = q_endpoint_closed(p, nu)
                gap = max(abs(plus - endpoint_derivative(prev, nu, 1)),
                          abs(minus - endpoint_derivative(prev, nu, -1)))
                yield _exact_row("Q_ENDPOINT", p, None, nu, gap, Fraction(0))
                yield _exact_row("WZ_SUM", p, None, nu, wz_sum(p, nu), wz_closed(p, nu))
    for p in range(cfg.p_max + 1):
        n2 = q_norm_sq(q_poly(p, 0))
        yield _exact_row("Q0_NORM", p, None, 0, n2, q0_norm_sq_closed(p))
        bound = Fraction(1, 2 * p + 1)
        yield ("Q0_HOUSTON", None, p, None, 0, n2, bound, _ratio(n2, bound), n2 < bound)
        if p >= 1:
            yield _exact_row("Q1_NORM", p, None, 1, q_norm_sq(q_poly(p, 1)), q1_norm_sq_closed(p))
    for p in range(cfg.p_max + 1):
        for nu in range(min(p, cfg.nu_max) + 1):
            _, gap = sharpness_case(p, nu)
            yield _exact_row("SHARPNESS", p, None, nu, gap, Fraction(0))
    rng = np.random.default_rng(cfg.seed)
    for i in range(100):
        a, b = random_rational_series(rng), random_rational_series(rng)
        exact = series_inner_product(a, b)
        quad = quadrature_inner_product(a, b)
        err = abs(quad - float(exact))
        ok = err <= QUAD_RTOL * abs(float(exact)) if exact != 0 else err <= QUAD_RTOL
        yield ("QUAD_ORACLE", None, i, None, None, exact, quad,
               quad / float(exact) if exact != 0 else None, ok)


def _branch(k: int, n: int) -> str:
    if k > n:
        return "k>n"
    if k == n:
        return "k=n"
    if k == n - 1:
        return "k=n-1"
    return "k<=n-2"


def cmd_verify_identities(cfg: RunConfig) -> int:
    rows = list(identity_rows(cfg))
    _emit(render_csv(rows), cfg.out)
    branches = {_branch(r[3], r[4]) for r in rows if r[0] == "PSI_INNER"}
    print(f"psi inner-product branches exercised: {', '.join(sorted(branches))}", file=sys.stderr)
    failed = [r for r in rows if not r[-1]]
    if failed:
        r = failed[0]
        print(f"FAIL {r[0]} p={r[2]} s={_cell(r[3])} nu={_cell(r[4])}: "
              f"lhs={_cell(r[5])} rhs={_cell(r[6])} ({len(failed)} failing rows)", file=sys.stderr)
        return 1
    print(f"all {len(rows)} identity instances hold", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# verify-bounds


def _report_row(r: BoundReport, kind: str | None = None, passed: bool | None = None):
    return (kind or r.kind.value, r.function, r.p, r.s, r.nu, r.lhs, r.rhs, r.ratio,
            r.passed if passed is None else passed)


def bound_rows(cfg: RunConfig) -> tuple[list[tuple], list[str]]:
    """CSV rows and failure messages; explicit rows first, then generic scans."""
    functions = [get_function(n) for n in cfg.functions]
    threads = _threads()
    rows, failures = [], []
    for r in explicit_sweep(functions, cfg.p_max, cfg.nu_max, cfg.s_max, cfg.quad_order, threads):
        rows.append(_report_row(r))
        if not r.passed:
            failures.append(f"{r.kind.value} {r.function} p={r.p} s={r.s} nu={r.nu} ratio={r.ratio:.6g}")
    if cfg.skip_generic:
        return rows, failures
    generic = generic_sweep(functions, cfg.p_max, cfg.nu_max, cfg.s_max,
                            quad_order=cfg.quad_order, threads=threads)
    families: dict[tuple, list[BoundReport]] = defaultdict(list)
    for r, k in generic:
        families[(r.kind.value, r.function, r.nu, r.s, k)].append(r)
    verdict = {}
    for key, reps in families.items():
        growth = ratio_tail_growth([r.p for r in reps], [r.ratio for r in reps])
        verdict[key] = growth <= GROWTH_TOL and all(math.isfinite(r.ratio) for r in reps)
        emp_c = max(r.ratio for r in reps)
        print(f"{key[0]} {key[1]} nu={key[2]} s={key[3]}" + (f" k={key[4]}" if key[4] else "")
              + f": empirical C {emp_c:.6g}, tail growth {growth:.4g}", file=sys.stderr)
    for r, k in generic:
        key = (r.kind.value, r.function, r.nu, r.s, k)
        kind = f"{key[0]}[k={k}]" if k else None
        rows.append(_report_row(r, kind, verdict[key]))
    return rows, failures


def cmd_verify_bounds(cfg: RunConfig) -> int:
    try:
        rows, failures = bound_rows(cfg)
    except QuadratureError as exc:
        print(f"FAIL quadrature: {exc}", file=sys.stderr)
        return 1
    _emit(render_csv(rows), cfg.out)
    if failures:
        print(f"FAIL {failures[0]} ({len(failures)} explicit-constant violations)", file=sys.stderr)
        return 1
    print(f"all explicit-constant bounds hold over {len(rows)} rows", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# emit-poly and sweep-growth


def cmd_emit_poly(cfg: RunConfig) -> int:
    idx = cfg.index
    try:
        if cfg.family == "q":
            series = q_poly(idx["p"], idx["nu"]).series
        else:
            series = psi(idx["i"], idx["n"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(series.to_text(), cfg.out)
    return 0


def cmd_sweep_growth(cfg: RunConfig) -> int:
    rows = []
    for nu in range(cfg.nu_max + 1):
        lo = max(cfg.p_min, nu, 1)
        if lo > cfg.p_max:
            continue
        for p, n2, ratio in growth_scan(nu, range(lo, cfg.p_max + 1)):
            scale = Fraction(p) ** (2 * nu - 1)
            rows.append(("Q_GROWTH", None, p, None, nu, n2, scale, ratio, math.isfinite(ratio)))
    if not rows:
        raise UsageError(f"empty p range {cfg.p_min}..{cfg.p_max}")
    _emit(render_csv(rows), cfg.out)
    for nu in range(cfg.nu_max + 1):
        vals = [r[7] for r in rows if r[4] == nu]
        if vals:
            print(f"nu={nu}: empirical C {max(vals):.6g}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _common(sp: argparse.ArgumentParser, **defaults) -> None:
    sp.add_argument("--p-max", type=int, default=defaults.get("p_max", 20))
    sp.add_argument("--nu-max", type=int, default=defaults.get("nu_max", 3))
    sp.add_argument("--out", default=None, help="CSV path (default stdout)")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legproj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    vi = sub.add_parser("verify-identities", help="exact identity certification")
    _common(vi, nu_max=8)
    vi.add_argument("--n-max", type=int, default=5)
    vi.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    vb = sub.add_parser("verify-bounds", help="measured errors against a-priori bounds")
    _common(vb)
    vb.add_argument("--s-max", type=int, default=3)
    vb.add_argument("--functions", default=",".join(DEFAULT_FUNCTIONS),
                    help=f"comma list from {', '.join(sorted(SAMPLE_FUNCTIONS))}")
    vb.add_argument("--quad-order", type=int, default=None)
    vb.add_argument("--skip-generic", action="store_true", help="explicit-constant bounds only")

    ep = sub.add_parser("emit-poly", help="dump q_{p,nu} or psi_{i,n} coefficients")
    fam = ep.add_subparsers(dest="family", required=True)
    q = fam.add_parser("q")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--nu", type=int, required=True)
    q.add_argument("--out", default=None)
    ps = fam.add_parser("psi")
    ps.add_argument("--i", type=int, required=True)
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--out", default=None)

    sg = sub.add_parser("sweep-growth", help="||q_{p,nu}||^2 / p^(2nu-1) over p")
    _common(sg, p_max=200, nu_max=4)
    sg.add_argument("--p-min", type=int, default=1)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, out=getattr(ns, "out", None))
    for name in ("p_max", "p_min", "nu_max", "n_max", "s_max", "quad_order", "seed",
                 "skip_generic", "inject_fault"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "functions"):
        cfg.functions = tuple(f.strip() for f in ns.functions.split(",") if f.strip())
    if ns.command == "emit-poly":
        cfg.family = ns.family
        keys = ("p", "nu") if ns.family == "q" else ("i", "n")
        cfg.index = {k: getattr(ns, k) for k in keys}
    return cfg


COMMANDS = {
    "verify-identities": cmd_verify_identities,
    "verify-bounds": cmd_verify_bounds,
    "emit-poly": cmd_emit_poly,
    "sweep-growth": cmd_sweep_growth,
}


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        if cfg.command != "emit-poly":
            cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"legproj {ns.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
