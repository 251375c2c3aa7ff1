"""scikit-learn style wrappers so the model composes with pipelines and grid tools.

The estimators hold hyper-parameters only in ``__init__`` and compute
everything in ``fit``, following the usual ``get_params``/``set_params``
contract.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_param_matrix
from .cascade import detect_period, doubling_points, feigenbaum_estimate, from_logistic, to_logistic
from .config import RunConfig
from .equilibrium import coexistence_fixed_point
from .exceptions import InsufficientPoints, MarketModelError
from .market_map import MarketParams, reduce_params
from .stability import coexistence_condition
from .sweep import RegimeKind, analytic_regime, empirical_regime, empirical_summaries, sweep_params


class LogisticConjugacy(TransformerMixin, BaseEstimator):
    """Map private sales volumes to the logistic coordinate ``z`` and back.

    ``fit`` solves for the stationary state volume ``y*``; ``transform``
    applies ``z = x * dx * y* / c`` to a single-column array of volumes.
    """

    def __init__(self, alpha=1.0, c0=2.0, mu=1.0, beta_x=1.0, beta_y=1.0, a=1.0):
        self.alpha = alpha
        self.c0 = c0
        self.mu = mu
        self.beta_x = beta_x
        self.beta_y = beta_y
        self.a = a

    def fit(self, X=None, y=None):
        params = MarketParams(self.alpha, self.c0, self.mu, self.beta_x, self.beta_y, self.a)
        reduced = reduce_params(params)
        fp = coexistence_fixed_point(reduced, params.a)
        if not fp.positive:
            raise MarketModelError(f"no positive coexistence equilibrium for c={reduced.c}")
        self.params_ = params
        self.reduced_ = reduced
        self.x_star_ = fp.x_star
        self.y_star_ = fp.y_star
        self.gamma_ = reduced.c / 4.0
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "y_star_")
        X = check_param_matrix(X, 1)
        return to_logistic(X, self.reduced_, self.y_star_)

    def inverse_transform(self, X):
        check_is_fitted(self, "y_star_")
        X = check_param_matrix(X, 1)
        return from_logistic(X, self.reduced_, self.y_star_)


class RegimeClassifier(ClassifierMixin, BaseEstimator):
    """Label points of the ``(c, beta_x / beta_y)`` plane with their market regime.

    Rows of ``X`` are ``(c, beta_ratio)``; cells are built the same way as in
    :func:`market_cascade.sweep.sweep`. ``predict`` returns the analytic
    regime name, ``predict_empirical`` what the coupled orbit actually does.
    No training data is needed; ``fit`` only validates the input shape.
    """

    def __init__(self, a=1.0, config=None):
        self.a = a
        self.config = config

    def fit(self, X, y=None):
        check_param_matrix(X, 2)
        self.classes_ = np.array(
            [k.value for k in RegimeKind if k not in (RegimeKind.PeriodK, RegimeKind.Chaotic, RegimeKind.Divergent)]
        )
        self.n_features_in_ = 2
        return self

    def _params(self, X):
        check_is_fitted(self, "classes_")
        X = check_param_matrix(X, 2)
        return [sweep_params(float(c), float(r), self.a) for c, r in X]

    def predict(self, X):
        return np.array([analytic_regime(p).name for p in self._params(X)], dtype=object)

    def predict_empirical(self, X):
        cfg = self.config if self.config is not None else RunConfig()
        summaries = empirical_summaries(self._params(X), cfg)
        return np.array([empirical_regime(s).name for s in summaries], dtype=object)

    def decision_function(self, X):
        """Signed coexistence margin in units of ``c``; positive inside the stable region."""
        return np.array(
            [coexistence_condition(reduce_params(p), p.beta_x, p.beta_y).margin for p in self._params(X)]
        )


class PeriodDoublingLocator(BaseEstimator):
    """Find the doubling points of the logistic form on ``[gamma_lo, gamma_hi]``.

    After ``fit``: ``points_``, ``feigenbaum_estimates_`` and, when at least
    three points were found, ``feigenbaum_``. ``predict`` gives the attractor
    period per gamma, with -1 for aperiodic or escaping orbits.
    """

    def __init__(self, gamma_lo=0.7, gamma_hi=0.9, k_max=4, bisect_tol=1e-6, config=None):
        self.gamma_lo = gamma_lo
        self.gamma_hi = gamma_hi
        self.k_max = k_max
        self.bisect_tol = bisect_tol
        self.config = config

    def fit(self, X=None, y=None):
        cfg = self.config if self.config is not None else RunConfig()
        result = doubling_points(self.gamma_lo, self.gamma_hi, self.k_max, self.bisect_tol, cfg)
        self.points_ = np.array(result.points)
        self.feigenbaum_estimates_ = np.array(result.feigenbaum_estimates)
        try:
            self.feigenbaum_ = feigenbaum_estimate(result)
        except InsufficientPoints:
            self.feigenbaum_ = np.nan
        return self

    def predict(self, X):
        check_is_fitted(self, "points_")
        cfg = self.config if self.config is not None else RunConfig()
        gammas = check_param_matrix(X, 1)[:, 0]
        out = []
        for g in gammas:
            s = detect_period(g, cfg.seed_z, cfg.burn_in, cfg.window, cfg.period_tol, cfg.max_period)
            out.append(-1 if s.period is None else s.period)
        return np.array(out)
