"""Stability of the stationary sales volumes.

The per-seller conditions freeze the other seller at its stationary value:

* private seller stable for ``1 < c < 3``;
* state seller stable for ``0 < c < 1 / (1 - beta_x / (2 beta_y))``;
* coexistence needs both, with the state bound not above 3, which is the
  same as ``beta_x <= 4/3 beta_y``.

The coupled Jacobian is reported next to these for comparison only.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_count, check_positive
from .equilibrium import FixedPoint, coexistence_fixed_point
from .market_map import MarketParams, MarketState, ReducedParams, iterate, reduce_params

BOUNDARY_TOL = 1e-12
PRICE_RATIO_BOUND = 4.0 / 3.0
PRIVATE_UPPER = 3.0


class Stability(enum.IntEnum):
    # ordered so that min() picks the worst outcome
    NotApplicable = 0
    Unstable = 1
    Marginal = 2
    Stable = 3


@dataclass(frozen=True)
class Classification:
    value: Stability
    # signed distance (in units of c) to the nearest bound; negative when violated
    margin: float

    @property
    def stable(self) -> bool:
        return self.value is Stability.Stable


@dataclass(frozen=True)
class StabilityReport:
    private_cond: Classification
    state_cond: Classification
    coexistence_cond: Classification
    price_bound_ok: bool
    jacobian_spectral_radius: float
    jacobian_stable: bool

    def as_rows(self) -> list[tuple[str, str]]:
        rows = []
        for name in ("private_cond", "state_cond", "coexistence_cond"):
            cls = getattr(self, name)
            rows.append((name, cls.value.name))
            rows.append((f"{name}_margin", repr(cls.margin)))
        rows.append(("price_bound_ok", str(self.price_bound_ok).lower()))
        rows.append(("jacobian_spectral_radius", repr(self.jacobian_spectral_radius)))
        rows.append(("jacobian_stable", str(self.jacobian_stable).lower()))
        return rows


def _classify(slacks) -> Classification:
    margin = min(slacks)
    if margin > BOUNDARY_TOL:
        return Classification(Stability.Stable, margin)
    if margin >= -BOUNDARY_TOL:
        return Classification(Stability.Marginal, margin)
    return Classification(Stability.Unstable, margin)


def private_stability(reduced: ReducedParams) -> Classification:
    c = reduced.c
    return _classify((c - 1.0, PRIVATE_UPPER - c))


def state_upper_bound(beta_x: float, beta_y: float) -> float:
    """Upper income bound of the state seller; ``inf`` when ``beta_x >= 2 beta_y``."""
    d = 1.0 - 0.5 * beta_x / beta_y
    if d > BOUNDARY_TOL:
        return 1.0 / d
    return math.inf


def state_stability(reduced: ReducedParams, beta_x: float, beta_y: float) -> Classification:
    """Frozen-private stability of the state seller.

    For ``beta_x >= 2 beta_y`` the undivided form ``2 (beta_y/beta_x)(c-1) < c``
    holds for every positive ``c``, so only the lower bound remains.
    """
    c = reduced.c
    upper = state_upper_bound(beta_x, beta_y)
    if math.isinf(upper):
        return _classify((c,))
    return _classify((c, upper - c))


def price_bound_check(beta_x: float, beta_y: float) -> bool:
    return beta_x <= PRICE_RATIO_BOUND * beta_y + BOUNDARY_TOL


def coexistence_condition(reduced: ReducedParams, beta_x: float, beta_y: float) -> Classification:
    private = private_stability(reduced)
    state = state_stability(reduced, beta_x, beta_y)
    if not price_bound_check(beta_x, beta_y):
        # the state bound sits above the private bound of 3
        upper = state_upper_bound(beta_x, beta_y)
        return Classification(Stability.Unstable, PRIVATE_UPPER - upper)
    c = reduced.c
    joint = _classify((c - 1.0, state_upper_bound(beta_x, beta_y) - c))
    worst = min(private.value, state.value, joint.value)
    return Classification(worst, joint.margin)


def jacobian(reduced: ReducedParams, a: float, s: MarketState) -> np.ndarray:
    c, dx, dy = reduced.c, reduced.delta_x, reduced.delta_y
    x, y = s.x, s.y
    return np.array(
        [
            [c - 2.0 * dx * x * y, -dx * x * x],
            [-a * dy * y, -a * dy * x],
        ]
    )


def spectral_radius(m) -> float:
    """Largest eigenvalue modulus of a 2x2 matrix from its trace and determinant."""
    (p, q), (r, s) = np.asarray(m, dtype=np.float64)
    half_tr = 0.5 * (p + s)
    det = p * s - q * r
    disc = half_tr * half_tr - det
    if disc >= 0.0:
        root = math.sqrt(disc)
        return float(max(abs(half_tr + root), abs(half_tr - root)))
    # complex pair: |lambda|^2 = det
    return math.sqrt(det)


def empirical_stability(params: MarketParams, fp: FixedPoint, perturbation: float, n: int) -> bool:
    """Perturb both coordinates and check the orbit ends within ``perturbation / 10``."""
    if perturbation == 0:
        return True
    check_positive("perturbation", perturbation)
    n = check_count("n", n)
    limit = 0.01 * max(abs(fp.x_star), abs(fp.y_star), 1.0)
    if perturbation > limit:
        raise ValueError(f"perturbation {perturbation} exceeds 1% of the state scale ({limit})")
    start = MarketState(fp.x_star + perturbation, fp.y_star + perturbation)
    orbit = iterate(params, start, n)
    if orbit.diverged:
        return False
    last = orbit.states[-1]
    tol = perturbation / 10.0
    return abs(last.x - fp.x_star) <= tol and abs(last.y - fp.y_star) <= tol


def stability_report(params: MarketParams) -> StabilityReport:
    """All analytic conditions plus the coupled-Jacobian check at the coexistence point.

    When no positive coexistence point exists the Jacobian is evaluated at the
    trivial point ``(0, a c)`` instead.
    """
    reduced = reduce_params(params)
    bx, by = params.beta_x, params.beta_y
    try:
        fp = coexistence_fixed_point(reduced, params.a)
        at = fp.state if fp.positive else MarketState(0.0, params.a * reduced.c)
    except ZeroDivisionError:
        at = MarketState(0.0, params.a * reduced.c)
    rho = spectral_radius(jacobian(reduced, params.a, at))
    return StabilityReport(
        private_cond=private_stability(reduced),
        state_cond=state_stability(reduced, bx, by),
        coexistence_cond=coexistence_condition(reduced, bx, by),
        price_bound_ok=price_bound_check(bx, by),
        jacobian_spectral_radius=rho,
        jacobian_stable=rho < 1.0,
    )
