"""Coupled sales-volume maps for one private and one state seller.

The private seller's next volume is ``x' = x * (C - dx * x * y)`` and the
state seller's is ``y' = A * (C - dy * x * y)``, with ``C = alpha * c0``,
``dx = mu * beta_x`` and ``dy = mu * beta_y``. Both coordinates are updated
from the same old pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._validation import check_count, check_positive

DEFAULT_DIVERGENCE_THRESHOLD = 1e12


@dataclass(frozen=True)
class MarketParams:
    alpha: float
    c0: float
    mu: float
    beta_x: float
    beta_y: float
    a: float

    def __post_init__(self):
        for name in ("alpha", "c0", "mu", "beta_x", "beta_y", "a"):
            object.__setattr__(self, name, check_positive(name, getattr(self, name)))

    @classmethod
    def from_reduced(cls, c: float, delta_x: float, delta_y: float, a: float) -> "MarketParams":
        """Build raw parameters whose reduction is exactly ``(c, delta_x, delta_y)``."""
        return cls(alpha=c, c0=1.0, mu=1.0, beta_x=delta_x, beta_y=delta_y, a=a)

    @property
    def reduced(self) -> "ReducedParams":
        return reduce_params(self)

    @property
    def price_ratio(self) -> float:
        return self.beta_x / self.beta_y


@dataclass(frozen=True)
class ReducedParams:
    c: float
    delta_x: float
    delta_y: float


@dataclass(frozen=True)
class MarketState:
    x: float
    y: float

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


@dataclass
class Orbit:
    states: list = field(default_factory=list)
    diverged: bool = False
    diverged_at: int | None = None

    def __len__(self):
        return len(self.states)


def reduce_params(params: MarketParams) -> ReducedParams:
    return ReducedParams(
        c=params.alpha * params.c0,
        delta_x=params.mu * params.beta_x,
        delta_y=params.mu * params.beta_y,
    )


def _step_xy(c, dx, dy, a, x, y):
    xy = x * y
    return x * (c - dx * xy), a * (c - dy * xy)


def step(params: MarketParams, s: MarketState) -> MarketState:
    """Advance both sellers one sale; negative or non-finite results are returned as-is."""
    r = reduce_params(params)
    x, y = _step_xy(r.c, r.delta_x, r.delta_y, params.a, s.x, s.y)
    return MarketState(x, y)


def step_private_fixed_y(params: MarketParams, x: float, y_star: float) -> float:
    """Private map with the state volume frozen at ``y_star``."""
    r = reduce_params(params)
    return x * (r.c - r.delta_x * x * y_star)


def step_state_fixed_x(params: MarketParams, y: float, x_star: float) -> float:
    """State map with the private volume frozen at ``x_star``; affine in ``y``."""
    r = reduce_params(params)
    return params.a * (r.c - r.delta_y * x_star * y)


def _escaped(x: float, y: float, threshold: float) -> bool:
    # NaN fails both comparisons, so test for "not inside" instead of "outside"
    return not (abs(x) <= threshold and abs(y) <= threshold)


def iterate(
    params: MarketParams,
    init: MarketState,
    n: int,
    divergence_threshold: float = DEFAULT_DIVERGENCE_THRESHOLD,
) -> Orbit:
    """Apply :func:`step` ``n`` times starting from ``init``.

    ``states[0]`` is ``init``. On the first state whose magnitude exceeds
    ``divergence_threshold`` (or is not finite) iteration stops; that state is
    kept as the last entry and its index is recorded in ``diverged_at``.
    """
    n = check_count("n", n)
    check_positive("divergence_threshold", divergence_threshold)
    r = reduce_params(params)
    c, dx, dy, a = r.c, r.delta_x, r.delta_y, params.a
    x, y = float(init.x), float(init.y)
    orbit = Orbit(states=[MarketState(x, y)])
    if _escaped(x, y, divergence_threshold):
        orbit.diverged, orbit.diverged_at = True, 0
        return orbit
    for k in range(1, n + 1):
        x, y = _step_xy(c, dx, dy, a, x, y)
        orbit.states.append(MarketState(x, y))
        if _escaped(x, y, divergence_threshold):
            orbit.diverged, orbit.diverged_at = True, k
            break
    return orbit
