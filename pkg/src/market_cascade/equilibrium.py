"""Stationary sales volumes of the coupled maps."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ._validation import check_positive
from .exceptions import DegenerateEquilibrium
from .market_map import MarketParams, MarketState, ReducedParams, step

DEGENERACY_TOL = 1e-12


class FixedPointKind(enum.Enum):
    Coexistence = "Coexistence"
    Trivial = "Trivial"


@dataclass(frozen=True)
class FixedPoint:
    x_star: float
    y_star: float
    kind: FixedPointKind
    # False when c <= 1 or a coordinate is not strictly positive
    positive: bool = True

    @property
    def state(self) -> MarketState:
        return MarketState(self.x_star, self.y_star)


def coexistence_fixed_point(reduced: ReducedParams, a: float) -> FixedPoint:
    """Solve the stationary pair in closed form.

    At a fixed point with ``x > 0`` the private map forces
    ``x * y = (c - 1) / dx =: P`` and the state map then gives
    ``y = a * (c - dy * P)``, so ``x = P / y``.

    Raises:
        DegenerateEquilibrium: if ``a * (c - dy * P)`` vanishes (within 1e-12).
    """
    a = check_positive("a", a)
    c, dx, dy = reduced.c, reduced.delta_x, reduced.delta_y
    product = (c - 1.0) / dx
    denom = a * (c - product * dy)
    if abs(denom) <= DEGENERACY_TOL:
        raise DegenerateEquilibrium(
            f"coexistence denominator a*(c - P*dy) = {denom!r} is zero for c={c}, a={a}"
        )
    x_star = product / denom
    y_star = denom
    positive = c > 1.0 and x_star > 0.0 and y_star > 0.0
    return FixedPoint(x_star, y_star, FixedPointKind.Coexistence, positive)


def trivial_fixed_point(reduced: ReducedParams, a: float) -> FixedPoint:
    """The no-private-sales equilibrium ``(0, a * c)``."""
    return FixedPoint(0.0, a * reduced.c, FixedPointKind.Trivial, positive=False)


def price_ratio_at_equilibrium(reduced: ReducedParams, a: float, y_star: float) -> float:
    """Price ratio ``dy / dx`` implied by a stationary state volume ``y_star``."""
    if reduced.c == 1.0:
        raise ZeroDivisionError("price ratio is undefined at c = 1")
    return (reduced.c - y_star / a) / (reduced.c - 1.0)


def verify_fixed_point(params: MarketParams, fp: FixedPoint, tol: float) -> bool:
    check_positive("tol", tol)
    nxt = step(params, fp.state)
    return abs(nxt.x - fp.x_star) <= tol and abs(nxt.y - fp.y_star) <= tol
