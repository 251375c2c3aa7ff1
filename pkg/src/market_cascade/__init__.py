"""Coupled sales maps of a private and a state seller, their equilibria,
stability conditions and period-doubling route to chaos."""

from .cascade import (
    DoublingCascade,
    LogisticParams,
    OrbitSummary,
    conjugacy_check,
    detect_period,
    doubling_points,
    feigenbaum_estimate,
    from_logistic,
    logistic_step,
    lyapunov_exponent,
    state_map_affinity_check,
    to_logistic,
)
from .config import RunConfig
from .equilibrium import (
    FixedPoint,
    FixedPointKind,
    coexistence_fixed_point,
    price_ratio_at_equilibrium,
    trivial_fixed_point,
    verify_fixed_point,
)
from .estimators import LogisticConjugacy, PeriodDoublingLocator, RegimeClassifier
from .exceptions import (
    ConvergenceFailure,
    DegenerateEquilibrium,
    InsufficientPoints,
    InvalidSeed,
    MarketModelError,
)
from .market_map import (
    MarketParams,
    MarketState,
    Orbit,
    ReducedParams,
    iterate,
    reduce_params,
    step,
    step_private_fixed_y,
    step_state_fixed_x,
)
from .stability import (
    Classification,
    Stability,
    StabilityReport,
    coexistence_condition,
    empirical_stability,
    jacobian,
    price_bound_check,
    private_stability,
    spectral_radius,
    stability_report,
    state_stability,
)
from .sweep import Regime, RegimeKind, SweepGrid, classify_regime, sweep

__version__ = "0.1.0"
