"""Period-doubling behaviour of the private seller's map.

With the state volume frozen at its stationary value ``y*``, the substitution
``z = x * dx * y* / c`` turns the private map into the logistic map
``z' = 4 gamma z (1 - z)`` with ``4 gamma = c``. Everything below the
conjugacy works on that logistic form.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_count, check_positive
from .config import RunConfig
from .exceptions import ConvergenceFailure, InsufficientPoints, InvalidSeed
from .market_map import MarketParams, ReducedParams, reduce_params, step_private_fixed_y, step_state_fixed_x

DEFAULTS = RunConfig()
ZERO_SLOPE = 1e-300
# z is only known to rounding, so a slope factor |1 - 2z| this small is zero
CRITICAL_BAND = 2.0 * sys.float_info.epsilon


@dataclass(frozen=True)
class LogisticParams:
    gamma: float

    @classmethod
    def from_reduced(cls, reduced: ReducedParams) -> "LogisticParams":
        return cls(gamma=reduced.c / 4.0)

    @property
    def r(self) -> float:
        return 4.0 * self.gamma


@dataclass
class OrbitSummary:
    period: int | None
    lyapunov: float
    diverged: bool
    samples: np.ndarray = field(repr=False)

    @property
    def chaotic(self) -> bool:
        return self.period is None and not self.diverged


@dataclass
class DoublingCascade:
    points: list[float]
    feigenbaum_estimates: list[float]


def to_logistic(x: float, reduced: ReducedParams, y_star: float) -> float:
    return x * reduced.delta_x * y_star / reduced.c


def from_logistic(z: float, reduced: ReducedParams, y_star: float) -> float:
    return z * reduced.c / (reduced.delta_x * y_star)


def logistic_step(gamma: float, z: float) -> float:
    return 4.0 * gamma * z * (1.0 - z)


def conjugacy_check(params: MarketParams, y_star: float, x0: float, n: int) -> float:
    """Largest gap between the transformed private orbit and the logistic orbit over ``n`` steps."""
    n = check_count("n", n)
    reduced = reduce_params(params)
    gamma = reduced.c / 4.0
    x = float(x0)
    z = to_logistic(x, reduced, y_star)
    worst = 0.0
    for _ in range(n):
        x = step_private_fixed_y(params, x, y_star)
        z = logistic_step(gamma, z)
        worst = max(worst, abs(to_logistic(x, reduced, y_star) - z))
    return worst


def smallest_period(window: np.ndarray, tol: float, max_period: int) -> int | None:
    """Smallest ``p <= max_period`` with ``|w[k+p] - w[k]| < tol`` for every ``k`` in the window.

    ``window`` is 1-D, or 2-D with one row per iterate and one column per coordinate.
    """
    w = np.asarray(window, dtype=np.float64)
    if w.ndim == 1:
        w = w[:, None]
    n = w.shape[0]
    top = min(max_period, n - 1)
    # cheap pre-screen: only lags that already match at the final sample
    lagged = w[n - 1 - top : n - 1][::-1]
    candidates = np.nonzero(np.all(np.abs(w[-1] - lagged) < tol, axis=1))[0] + 1
    for p in candidates:
        if np.all(np.abs(w[p:] - w[:-p]) < tol):
            return int(p)
    return None


def _check_seed(z0: float) -> float:
    z0 = float(z0)
    if not 0.0 < z0 < 1.0:
        raise InvalidSeed(f"seed must lie in (0, 1), got {z0!r}")
    return z0


def _logistic_run(gamma: float, z0: float, burn_in: int, window: int, threshold: float):
    """Burn in, then record ``window`` iterates and the log-slope sum over them.

    Returns ``(samples, log_sum, zero_slope, escaped)``; on escape the samples
    are truncated at the last finite value.
    """
    r = 4.0 * gamma
    z = z0
    for _ in range(burn_in):
        z = r * z * (1.0 - z)
        if not abs(z) <= threshold:
            return np.array([]), math.nan, False, True
    samples = np.empty(window)
    log_sum = 0.0
    zero_slope = False
    log = math.log
    for k in range(window):
        u = abs(1.0 - 2.0 * z)
        slope = abs(r) * u
        if u <= CRITICAL_BAND or slope < ZERO_SLOPE:
            zero_slope = True
        else:
            log_sum += log(slope)
        z = r * z * (1.0 - z)
        if not abs(z) <= threshold:
            return samples[:k], math.nan, False, True
        samples[k] = z
    return samples, log_sum, zero_slope, False


def detect_period(
    gamma: float,
    z0: float = DEFAULTS.seed_z,
    burn_in: int = DEFAULTS.burn_in,
    window: int = DEFAULTS.window,
    tol: float = DEFAULTS.period_tol,
    max_period: int = DEFAULTS.max_period,
    divergence_threshold: float = DEFAULTS.divergence_threshold,
) -> OrbitSummary:
    """Attractor period of the logistic map at ``gamma``.

    ``samples`` holds one period of the attractor when a period is found and
    the whole observation window otherwise. The Lyapunov exponent is the mean
    log-slope over the window (``-inf`` if a slope vanishes to rounding).
    """
    z0 = _check_seed(z0)
    window = check_count("window", window, 2)
    samples, log_sum, zero_slope, escaped = _logistic_run(
        gamma, z0, int(burn_in), window, divergence_threshold
    )
    if escaped:
        if gamma <= 1.0:
            raise ArithmeticError(f"logistic orbit left [0, 1] at gamma={gamma!r} <= 1")
        return OrbitSummary(None, math.nan, True, samples)
    if gamma <= 1.0 and not (np.all(samples >= 0.0) and np.all(samples <= 1.0)):
        raise ArithmeticError(f"logistic orbit left [0, 1] at gamma={gamma!r} <= 1")
    lyap = -math.inf if zero_slope else log_sum / window
    period = smallest_period(samples, tol, max_period)
    if period is not None:
        samples = samples[:period].copy()
    return OrbitSummary(period, lyap, False, samples)


def lyapunov_exponent(
    gamma: float,
    z0: float = DEFAULTS.seed_z,
    burn_in: int = DEFAULTS.burn_in,
    n: int = DEFAULTS.lyapunov_steps,
) -> float:
    """Mean of ``ln|4 gamma (1 - 2 z_k)|`` over ``n`` iterates after the burn-in.

    Returns ``-inf`` as soon as an iterate sits on the critical point ``1/2``
    to within rounding, as happens on superstable orbits.
    """
    z0 = _check_seed(z0)
    n = check_count("n", n)
    r = 4.0 * gamma
    z = z0
    for _ in range(int(burn_in)):
        z = r * z * (1.0 - z)
    total = 0.0
    log = math.log
    for _ in range(n):
        u = abs(1.0 - 2.0 * z)
        slope = abs(r) * u
        if u <= CRITICAL_BAND or slope < ZERO_SLOPE:
            return -math.inf
        total += log(slope)
        z = r * z * (1.0 - z)
    return total / n


def _is_power_of_two(p: int) -> bool:
    return p > 0 and p & (p - 1) == 0


def doubling_points(
    gamma_lo: float,
    gamma_hi: float,
    k_max: int = DEFAULTS.k_max,
    bisect_tol: float = DEFAULTS.bisect_tol,
    config: RunConfig = DEFAULTS,
) -> DoublingCascade:
    """Locate successive period doublings of the logistic map in ``[gamma_lo, gamma_hi]``.

    Each transition is bracketed by a forward scan, then bisected on the
    predicate "period is at least the target, or aperiodic". Scan steps shrink
    with the previous gap so the scan never jumps past the next doubling.
    Close to a transition the orbit settles slowly, so within
    ``config.slow_band`` the burn-in is multiplied by ``config.slow_burn_in_factor``.

    Raises:
        ConvergenceFailure: if a transition is not bracketed in the interval,
            or the period at ``gamma_lo`` is not a power of two.
    """
    if not 0.0 < gamma_lo < gamma_hi <= 1.0:
        raise ValueError(f"need 0 < gamma_lo < gamma_hi <= 1, got {gamma_lo}, {gamma_hi}")
    k_max = check_count("k_max", k_max)
    check_positive("bisect_tol", bisect_tol)
    fast_burn = config.burn_in
    slow_burn = config.burn_in * config.slow_burn_in_factor

    def period_at(gamma: float, slow: bool) -> int | None:
        return detect_period(
            gamma,
            config.seed_z,
            slow_burn if slow else fast_burn,
            config.window,
            config.period_tol,
            config.max_period,
            config.divergence_threshold,
        ).period

    base = period_at(gamma_lo, slow=True)
    if base is None or not _is_power_of_two(base):
        raise ConvergenceFailure(f"period at gamma_lo={gamma_lo} is {base}, not a power of two")

    points: list[float] = []
    lo = gamma_lo
    target = base
    for _ in range(k_max):
        target *= 2
        if target > config.max_period:
            raise ConvergenceFailure(f"period {target} exceeds max_period={config.max_period}")

        def reached(gamma: float, slow: bool) -> bool:
            p = period_at(gamma, slow)
            return p is None or p >= target

        h = (gamma_hi - lo) / 64.0
        if len(points) >= 2:
            h = min(h, (points[-1] - points[-2]) / 8.0)
        elif len(points) == 1:
            h = min(h, (points[-1] - gamma_lo) / 8.0) if points[-1] > gamma_lo else h
        h = max(h, bisect_tol)

        a = lo
        while True:
            b = min(a + h, gamma_hi)
            if reached(b, slow=False):
                break
            if b >= gamma_hi:
                raise ConvergenceFailure(
                    f"no transition to period {target} in [{lo}, {gamma_hi}]"
                )
            a = b

        verified_slow = False
        while b - a > bisect_tol:
            slow = b - a <= config.slow_band
            if slow and not verified_slow:
                # the bracket's upper end was judged with the short burn-in
                verified_slow = True
                width = b - a
                while not reached(b, slow=True):
                    a, b = b, min(b + width, gamma_hi)
                    if a >= gamma_hi:
                        raise ConvergenceFailure(
                            f"no transition to period {target} in [{lo}, {gamma_hi}]"
                        )
                continue
            m = 0.5 * (a + b)
            if reached(m, slow):
                b = m
            else:
                a = m
        points.append(0.5 * (a + b))
        lo = points[-1]

    ratios = [
        (points[k] - points[k - 1]) / (points[k + 1] - points[k])
        for k in range(1, len(points) - 1)
    ]
    return DoublingCascade(points, ratios)


def feigenbaum_estimate(cascade: DoublingCascade) -> float:
    """Ratio of the last two doubling intervals."""
    pts = cascade.points
    if len(pts) < 3:
        raise InsufficientPoints(f"need at least 3 doubling points, got {len(pts)}")
    return (pts[-2] - pts[-3]) / (pts[-1] - pts[-2])


def state_map_affinity_check(params: MarketParams, x_star: float, samples: int = 8) -> bool:
    """True when the frozen-private state map has zero second differences in ``y``.

    An affine map has a single fixed point that attracts or repels every
    orbit geometrically, so it cannot double its period.
    """
    samples = check_count("samples", samples, 3)
    scale = max(params.a * reduce_params(params).c, 1.0)
    ys = np.linspace(-scale, scale, samples)
    f = np.array([step_state_fixed_x(params, float(y), x_star) for y in ys])
    second = f[2:] - 2.0 * f[1:-1] + f[:-2]
    ref = max(float(np.max(np.abs(f))), 1.0)
    return bool(np.all(np.abs(second) <= 1e-9 * ref))


def restricted_state_periods(
    params_list,
    x_stars,
    y0s,
    burn_in: int = 100_000,
    window: int = 64,
    tol: float = DEFAULTS.period_tol,
    divergence_threshold: float = DEFAULTS.divergence_threshold,
) -> tuple[list, list]:
    """Observed period of the frozen-private state orbit for many parameter sets at once.

    Returns ``(periods, diverged)``: the period per entry (``None`` when the
    orbit diverged or showed no period up to ``window // 2``) and a boolean
    divergence flag per entry.
    """
    reduced = [reduce_params(p) for p in params_list]
    a = np.array([p.a for p in params_list])
    c = np.array([r.c for r in reduced])
    dy = np.array([r.delta_y for r in reduced])
    xs = np.asarray(x_stars, dtype=np.float64)
    y = np.asarray(y0s, dtype=np.float64).copy()
    alive = np.ones_like(y, dtype=bool)
    hist = np.empty((window, y.size))
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(burn_in + window):
            y = a * (c - dy * xs * y)
            bad = ~(np.abs(y) <= divergence_threshold)
            if bad.any():
                alive &= ~bad
                y[bad] = 0.0
            if t >= burn_in:
                hist[t - burn_in] = y
    periods = [
        smallest_period(hist[:, i], tol, window // 2) if alive[i] else None
        for i in range(y.size)
    ]
    return periods, (~alive).tolist()


def bifurcation_scan(gammas, config: RunConfig = DEFAULTS, samples: int | None = None):
    """Attractor samples for each ``gamma`` in ascending order.

    Periodic attractors contribute one period of points; aperiodic ones the
    last ``samples`` iterates of the window (``config.samples`` by default).
    """
    cap = config.samples if samples is None else check_count("samples", samples)
    out = []
    for gamma in sorted(float(g) for g in gammas):
        s = detect_period(
            gamma,
            config.seed_z,
            config.burn_in,
            config.window,
            config.period_tol,
            config.max_period,
            config.divergence_threshold,
        )
        pts = s.samples if s.period is not None else s.samples[-cap:]
        out.append((gamma, pts))
    return out
