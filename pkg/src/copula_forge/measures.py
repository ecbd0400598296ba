"""Concordance, tail dependence and sup-norm asymmetry measures.

Integrals against ``dC2`` use the uniform ``n x n`` partition: the integrand
is the mean of ``C1`` over each cell's corners and the measure is the exact
C-volume of the cell. Singular copulas (M, W, the Marshall-Olkin curve)
need no special handling because cell volumes carry their mass exactly.
Error estimates compare resolutions ``n`` and ``n/2``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .catalog import Independence, LowerFrechet, UpperFrechet
from .core import CopulaExpr, lattice, volumes
from .transforms import structurally_equal, survival, transpose

__all__ = [
    "Estimate",
    "SupBounds",
    "MeasureReport",
    "SupNormBudgetError",
    "DEFAULT_RESOLUTION",
    "concordance",
    "stieltjes_integral",
    "kendall_tau",
    "spearman_rho",
    "gini_gamma",
    "blomqvist_beta",
    "tail_upper",
    "tail_lower",
    "tail_limit",
    "sup_distance",
    "asymmetry_mu",
    "radial_asymmetry_nu",
    "full_report",
]

DEFAULT_RESOLUTION = 1024
DEFAULT_TOL = 1e-4
# rows per partial sum; fixed so the reduction order never depends on threads
BLOCK_ROWS = 64
SUP_START = 32
SUP_BUDGET = 20_000_000
TAIL_KMIN, TAIL_KMAX = 4, 40
TAIL_STOP = 1e-6
# a copula is 1-Lipschitz in each argument, so a difference of two is 2-Lipschitz
DIFF_LIPSCHITZ = 2.0


class Estimate(NamedTuple):
    value: float
    err: float


class SupBounds(NamedTuple):
    lower: float
    upper: float


class SupNormBudgetError(RuntimeError):
    """Raised when certifying a sup norm would exceed the evaluation budget."""


def _threads() -> int:
    raw = os.environ.get("COPULA_FORGE_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _check_resolution(n: int) -> int:
    if int(n) != n or n < 16 or (int(n) & (int(n) - 1)):
        raise ValueError(f"resolution must be a power of two >= 16, got {n!r}")
    return int(n)


def _cell_sum(g1: np.ndarray, g2: np.ndarray) -> float:
    """``sum over cells of mean(g1 corners) * volume(g2)``, deterministic order."""
    n = g1.shape[0] - 1
    starts = range(0, n, BLOCK_ROWS)

    def block(i0: int) -> float:
        i1 = min(i0 + BLOCK_ROWS, n)
        a = g1[i0 : i1 + 1]
        mean = (a[1:, 1:] + a[1:, :-1] + a[:-1, 1:] + a[:-1, :-1]) * 0.25
        return float(np.sum(mean * volumes(g2[i0 : i1 + 1])))

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(block, starts))
    else:
        partials = [block(i0) for i0 in starts]
    return math.fsum(partials)


def _q_from_grids(g1: np.ndarray, g2: np.ndarray) -> Estimate:
    fine = 4.0 * _cell_sum(g1, g2) - 1.0
    coarse = 4.0 * _cell_sum(g1[::2, ::2], g2[::2, ::2]) - 1.0
    return Estimate(fine, abs(fine - coarse))


def _grid(c: CopulaExpr, n: int) -> np.ndarray:
    uu, vv = lattice(n)
    return c._values(uu, vv)


def concordance(c1: CopulaExpr, c2: CopulaExpr, n: int = DEFAULT_RESOLUTION) -> Estimate:
    """``4 * integral(C1 dC2) - 1`` with a two-resolution error estimate."""
    n = _check_resolution(n)
    g1 = _grid(c1, n)
    g2 = g1 if c2 is c1 else _grid(c2, n)
    return _q_from_grids(g1, g2)


def stieltjes_integral(c1: CopulaExpr, c2: CopulaExpr, n: int = DEFAULT_RESOLUTION) -> Estimate:
    """``integral(C1 dC2)`` itself, i.e. ``(Q + 1) / 4``."""
    q, err = concordance(c1, c2, n)
    return Estimate((q + 1.0) / 4.0, err / 4.0)


def kendall_tau(c: CopulaExpr, n: int = DEFAULT_RESOLUTION) -> Estimate:
    return concordance(c, c, n)


def spearman_rho(c: CopulaExpr, n: int = DEFAULT_RESOLUTION) -> Estimate:
    q, err = concordance(c, Independence(), n)
    return Estimate(3.0 * q, 3.0 * err)


def gini_gamma(c: CopulaExpr, n: int = DEFAULT_RESOLUTION) -> Estimate:
    n = _check_resolution(n)
    g = _grid(c, n)
    qm = _q_from_grids(g, _grid(UpperFrechet(), n))
    qw = _q_from_grids(g, _grid(LowerFrechet(), n))
    return Estimate(qm.value + qw.value, qm.err + qw.err)


def blomqvist_beta(c: CopulaExpr) -> float:
    return 4.0 * c(0.5, 0.5) - 1.0


def tail_limit(c: CopulaExpr, upper: bool) -> Estimate | None:
    """Diagonal difference quotient at dyadic abscissas with a Cauchy stop.

    Returns the first iterate within ``TAIL_STOP`` of its predecessor and
    that difference, or None when no such pair occurs for ``k <= 40``.
    """
    prev = None
    for k in range(TAIL_KMIN, TAIL_KMAX + 1):
        s = 2.0 ** -k
        if upper:
            t = 1.0 - s
            q = 2.0 - (1.0 - c(t, t)) / s
        else:
            q = c(s, s) / s
        if prev is not None and abs(q - prev) < TAIL_STOP:
            return Estimate(q, abs(q - prev))
        prev = q
    return None


def tail_upper(c: CopulaExpr) -> float | None:
    est = tail_limit(c, upper=True)
    return None if est is None else est.value


def tail_lower(c: CopulaExpr) -> float | None:
    est = tail_limit(c, upper=False)
    return None if est is None else est.value


def sup_distance(
    a: CopulaExpr, b: CopulaExpr, tol: float, budget: int = SUP_BUDGET
) -> SupBounds:
    """Certified bounds ``lower <= sup|a - b| <= upper`` with ``upper - lower <= tol``.

    Branch and bound over dyadic cells. On a cell of side ``h`` the average
    L1 distance from any point to the four corners is ``h``, so
    ``mean(|d| at corners) + 2h`` bounds ``|d|`` on the cell. Cells whose bound
    cannot beat the best lattice value by more than ``tol`` are retired;
    the rest are split in four. Expressions equal after normalization are
    exactly zero apart and short-circuit.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    if structurally_equal(a, b):
        return SupBounds(0.0, 0.0)

    def diff(u, v):
        return np.abs(a._values(u, v) - b._values(u, v))

    h = 1.0 / SUP_START
    uu, vv = lattice(SUP_START)
    d = diff(uu, vv)
    evals = d.size
    lower = float(d.max())
    u0 = uu[:-1, :-1].ravel()
    v0 = vv[:-1, :-1].ravel()
    # corner values: (u0,v0), (u0+h,v0), (u0,v0+h), (u0+h,v0+h)
    c00, c10 = d[:-1, :-1].ravel(), d[1:, :-1].ravel()
    c01, c11 = d[:-1, 1:].ravel(), d[1:, 1:].ravel()
    settled = 0.0
    while True:
        bound = (c00 + c10 + c01 + c11) * 0.25 + DIFF_LIPSCHITZ * h
        live = bound > lower + tol
        if (~live).any():
            settled = max(settled, float(bound[~live].max()))
        if not live.any():
            break
        u0, v0 = u0[live], v0[live]
        c00, c10, c01, c11 = c00[live], c10[live], c01[live], c11[live]
        m = u0.size
        if evals + 5 * m > budget:
            raise SupNormBudgetError(
                f"sup-norm certification at tol={tol} needs more than {budget} evaluations"
            )
        g = h / 2.0
        mid_u, mid_v = u0 + g, v0 + g
        d_b = diff(mid_u, v0)  # bottom edge midpoint
        d_l = diff(u0, mid_v)  # left edge midpoint
        d_c = diff(mid_u, mid_v)
        d_r = diff(u0 + h, mid_v)
        d_t = diff(mid_u, v0 + h)
        evals += 5 * m
        lower = max(lower, float(max(d_b.max(), d_l.max(), d_c.max(), d_r.max(), d_t.max())))
        u0 = np.concatenate([u0, mid_u, u0, mid_u])
        v0 = np.concatenate([v0, v0, mid_v, mid_v])
        c00, c10, c01, c11 = (
            np.concatenate([c00, d_b, d_l, d_c]),
            np.concatenate([d_b, c10, d_c, d_r]),
            np.concatenate([d_l, d_c, c01, d_t]),
            np.concatenate([d_c, d_r, d_t, c11]),
        )
        h = g
    return SupBounds(lower, max(lower, settled))


def asymmetry_mu(c: CopulaExpr, tol: float = DEFAULT_TOL, budget: int = SUP_BUDGET) -> SupBounds:
    """Bounds on ``||C - C^T|| / 2`` of width at most ``tol``."""
    lo, hi = sup_distance(c, transpose(c), 2.0 * tol, budget)
    return SupBounds(lo / 2.0, hi / 2.0)


def radial_asymmetry_nu(
    c: CopulaExpr, tol: float = DEFAULT_TOL, budget: int = SUP_BUDGET
) -> SupBounds:
    """Bounds on ``||C - C^|| / 2`` of width at most ``tol``."""
    lo, hi = sup_distance(c, survival(c), 2.0 * tol, budget)
    return SupBounds(lo / 2.0, hi / 2.0)


@dataclass
class MeasureReport:
    tau: float
    rho: float
    gamma: float
    beta: float
    lambda_upper: float | None
    lambda_lower: float | None
    mu: float
    nu: float
    resolution: int
    error_estimates: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def full_report(
    c: CopulaExpr, n: int = DEFAULT_RESOLUTION, tol: float = DEFAULT_TOL
) -> MeasureReport:
    """All measures of ``c``; mu and nu are interval midpoints, errors half-widths."""
    n = _check_resolution(n)
    g = _grid(c, n)
    tau = _q_from_grids(g, g)
    q_pi = _q_from_grids(g, _grid(Independence(), n))
    q_m = _q_from_grids(g, _grid(UpperFrechet(), n))
    q_w = _q_from_grids(g, _grid(LowerFrechet(), n))
    mu = asymmetry_mu(c, tol)
    nu = radial_asymmetry_nu(c, tol)
    up = tail_limit(c, upper=True)
    low = tail_limit(c, upper=False)
    errors = {
        "tau": tau.err,
        "rho": 3.0 * q_pi.err,
        "gamma": q_m.err + q_w.err,
        "beta": 0.0,
        "mu": (mu.upper - mu.lower) / 2.0,
        "nu": (nu.upper - nu.lower) / 2.0,
    }
    if up is not None:
        errors["lambda_upper"] = up.err
    if low is not None:
        errors["lambda_lower"] = low.err
    return MeasureReport(
        tau=tau.value,
        rho=3.0 * q_pi.value,
        gamma=q_m.value + q_w.value,
        beta=blomqvist_beta(c),
        lambda_upper=None if up is None else up.value,
        lambda_lower=None if low is None else low.value,
        mu=(mu.lower + mu.upper) / 2.0,
        nu=(nu.lower + nu.upper) / 2.0,
        resolution=n,
        error_estimates=errors,
    )
