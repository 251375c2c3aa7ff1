"""Regime classification of the coupled market over a (c, beta_x/beta_y) grid.

Each cell gets an analytic regime from the stability conditions and an
empirical summary from iterating the coupled map. The coupled iteration is
vectorised over cells; a single point goes through the same kernel as a
one-cell batch, so pointwise and grid results agree bit for bit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_count
from .cascade import OrbitSummary, smallest_period
from .config import RunConfig
from .equilibrium import coexistence_fixed_point
from .market_map import MarketParams, reduce_params
from .stability import (
    Stability,
    coexistence_condition,
    private_stability,
    state_stability,
)

CHUNK = 1024


class RegimeKind(enum.Enum):
    StableCoexistence = "StableCoexistence"
    PrivateUnstable = "PrivateUnstable"
    StateUnstable = "StateUnstable"
    BothUnstable = "BothUnstable"
    # both sellers stable on their own, but beta_x > 4/3 beta_y
    PriceBoundViolated = "PriceBoundViolated"
    NoPositiveEquilibrium = "NoPositiveEquilibrium"
    PeriodK = "PeriodK"
    Chaotic = "Chaotic"
    Divergent = "Divergent"


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    k: int | None = None

    @property
    def name(self) -> str:
        if self.kind is RegimeKind.PeriodK:
            return f"Period{self.k}"
        return self.kind.value

    @classmethod
    def from_name(cls, name: str) -> "Regime":
        if name.startswith("Period") and name[6:].isdigit():
            return cls(RegimeKind.PeriodK, int(name[6:]))
        return cls(RegimeKind(name))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SweepCell:
    c: float
    beta_ratio: float
    analytic: Regime
    empirical_period: int | None
    lyapunov: float


@dataclass
class SweepGrid:
    c_axis: np.ndarray
    ratio_axis: np.ndarray
    # row-major: cells[i * len(ratio_axis) + j] is (c_axis[i], ratio_axis[j])
    cells: list

    def cell(self, i: int, j: int) -> SweepCell:
        return self.cells[i * len(self.ratio_axis) + j]


def analytic_regime(params: MarketParams) -> Regime:
    reduced = reduce_params(params)
    if reduced.c <= 1.0:
        return Regime(RegimeKind.NoPositiveEquilibrium)
    try:
        fp = coexistence_fixed_point(reduced, params.a)
    except ZeroDivisionError:
        return Regime(RegimeKind.NoPositiveEquilibrium)
    if not fp.positive:
        return Regime(RegimeKind.NoPositiveEquilibrium)
    private_ok = private_stability(reduced).value is Stability.Stable
    state_ok = state_stability(reduced, params.beta_x, params.beta_y).value is Stability.Stable
    if not private_ok and not state_ok:
        return Regime(RegimeKind.BothUnstable)
    if not private_ok:
        return Regime(RegimeKind.PrivateUnstable)
    if not state_ok:
        return Regime(RegimeKind.StateUnstable)
    if coexistence_condition(reduced, params.beta_x, params.beta_y).stable:
        return Regime(RegimeKind.StableCoexistence)
    return Regime(RegimeKind.PriceBoundViolated)


def empirical_regime(summary: OrbitSummary) -> Regime:
    if summary.diverged:
        return Regime(RegimeKind.Divergent)
    if summary.period is None:
        return Regime(RegimeKind.Chaotic)
    return Regime(RegimeKind.PeriodK, summary.period)


def _start_point(params: MarketParams, cfg: RunConfig) -> tuple[float, float]:
    """Perturbed coexistence point, or the configured seed when none is positive."""
    reduced = reduce_params(params)
    try:
        fp = coexistence_fixed_point(reduced, params.a)
    except ZeroDivisionError:
        fp = None
    if fp is not None and fp.positive:
        return fp.x_star + cfg.perturbation, fp.y_star + cfg.perturbation
    return cfg.seed_x, cfg.seed_y


def _coupled_batch(c, dx, dy, a, x0, y0, cfg: RunConfig):
    """Iterate many coupled maps side by side.

    Returns ``(history, lyapunov, diverged)`` where ``history`` has shape
    ``(window, n, 2)``. The largest Lyapunov exponent comes from a tangent
    vector pushed through the Jacobian and renormalised every step of the
    observation window.
    """
    x = np.array(x0, dtype=np.float64)
    y = np.array(y0, dtype=np.float64)
    n = x.size
    window, burn_in, thr = cfg.window, cfg.burn_in, cfg.divergence_threshold
    hist = np.empty((window, n, 2))
    alive = np.ones(n, dtype=bool)
    vx = np.full(n, math.sqrt(0.5))
    vy = np.full(n, math.sqrt(0.5))
    log_sum = np.zeros(n)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for t in range(burn_in + window):
            xy = x * y
            if t >= burn_in:
                j11 = c - 2.0 * dx * xy
                j12 = -dx * x * x
                j21 = -a * dy * y
                j22 = -a * dy * x
                ux = j11 * vx + j12 * vy
                uy = j21 * vx + j22 * vy
                norm = np.sqrt(ux * ux + uy * uy)
                log_sum += np.log(norm)
                ok = norm > 0.0
                vx = np.where(ok, ux / np.where(ok, norm, 1.0), vx)
                vy = np.where(ok, uy / np.where(ok, norm, 1.0), vy)
            x, y = x * (c - dx * xy), a * (c - dy * xy)
            bad = ~((np.abs(x) <= thr) & (np.abs(y) <= thr))
            if bad.any():
                alive &= ~bad
                x[bad] = 0.0
                y[bad] = 0.0
            if t >= burn_in:
                hist[t - burn_in, :, 0] = x
                hist[t - burn_in, :, 1] = y
    lyap = np.where(alive, log_sum / window, np.nan)
    return hist, lyap, ~alive


def _summaries(hist, lyap, diverged, cfg: RunConfig) -> list[OrbitSummary]:
    out = []
    for i in range(lyap.size):
        if diverged[i]:
            out.append(OrbitSummary(None, math.nan, True, np.empty(0)))
            continue
        period = smallest_period(hist[:, i, :], cfg.period_tol, cfg.max_period)
        xs = hist[:, i, 0]
        samples = xs[:period].copy() if period is not None else xs.copy()
        out.append(OrbitSummary(period, float(lyap[i]), False, samples))
    return out


def empirical_summaries(params_list, cfg: RunConfig = RunConfig()) -> list[OrbitSummary]:
    """Coupled-orbit summaries for many parameter sets, processed in fixed-size chunks."""
    out: list[OrbitSummary] = []
    for lo in range(0, len(params_list), CHUNK):
        chunk = params_list[lo : lo + CHUNK]
        red = [reduce_params(p) for p in chunk]
        starts = [_start_point(p, cfg) for p in chunk]
        hist, lyap, div = _coupled_batch(
            np.array([r.c for r in red]),
            np.array([r.delta_x for r in red]),
            np.array([r.delta_y for r in red]),
            np.array([p.a for p in chunk]),
            [s[0] for s in starts],
            [s[1] for s in starts],
            cfg,
        )
        out.extend(_summaries(hist, lyap, div, cfg))
    return out


def classify_regime(params: MarketParams, cfg: RunConfig = RunConfig()) -> tuple[Regime, OrbitSummary]:
    """Analytic regime plus the observed behaviour of the coupled orbit."""
    return analytic_regime(params), empirical_summaries([params], cfg)[0]


def sweep_params(c: float, ratio: float, a: float = 1.0) -> MarketParams:
    """Grid-cell parameters: mu = beta_y = c0 = 1, alpha = c, beta_x = ratio."""
    return MarketParams(alpha=c, c0=1.0, mu=1.0, beta_x=ratio, beta_y=1.0, a=a)


def sweep(
    c_lo: float,
    c_hi: float,
    ratio_lo: float,
    ratio_hi: float,
    nc: int,
    nr: int,
    cfg: RunConfig = RunConfig(),
    a: float = 1.0,
) -> SweepGrid:
    if not (c_lo < c_hi and ratio_lo < ratio_hi):
        raise ValueError("sweep bounds must be increasing")
    nc, nr = check_count("nc", nc, 2), check_count("nr", nr, 2)
    c_axis = np.linspace(c_lo, c_hi, nc)
    ratio_axis = np.linspace(ratio_lo, ratio_hi, nr)
    params = [sweep_params(float(c), float(r), a) for c in c_axis for r in ratio_axis]
    summaries = empirical_summaries(params, cfg)
    cells = [
        SweepCell(
            c=p.alpha,
            beta_ratio=p.beta_x,
            analytic=analytic_regime(p),
            empirical_period=s.period,
            lyapunov=s.lyapunov,
        )
        for p, s in zip(params, summaries)
    ]
    return SweepGrid(c_axis, ratio_axis, cells)


def interior_agreement(grid: SweepGrid, margin: float = 0.05) -> tuple[int, int]:
    """Count interior StableCoexistence cells and how many of them settle to period 1.

    A cell is interior when its coexistence margin exceeds ``margin``.
    """
    interior = agree = 0
    for cell in grid.cells:
        if cell.analytic.kind is not RegimeKind.StableCoexistence:
            continue
        reduced = reduce_params(sweep_params(cell.c, cell.beta_ratio))
        if coexistence_condition(reduced, cell.beta_ratio, 1.0).margin <= margin:
            continue
        interior += 1
        agree += cell.empirical_period == 1
    return interior, agree
