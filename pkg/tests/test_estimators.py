import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from market_cascade.config import RunConfig
from market_cascade.estimators import LogisticConjugacy, PeriodDoublingLocator, RegimeClassifier
from market_cascade.exceptions import MarketModelError
from market_cascade.sweep import analytic_regime, sweep_params


def test_conjugacy_transformer_round_trip():
    t = LogisticConjugacy(alpha=1.0, c0=2.0).fit()
    X = np.array([[0.0], [1.0], [1.5]])
    Z = t.transform(X)
    assert Z[:, 0].tolist() == [0.0, 0.5, 0.75]
    np.testing.assert_allclose(t.inverse_transform(Z), X, rtol=1e-15)
    assert t.gamma_ == 0.5


def test_conjugacy_transformer_params_and_clone():
    t = LogisticConjugacy(c0=1.5, beta_x=1.2)
    assert t.get_params()["beta_x"] == 1.2
    c = clone(t).set_params(c0=2.5)
    assert c.c0 == 2.5 and t.c0 == 1.5


def test_conjugacy_transformer_requires_fit_and_positive_equilibrium():
    with pytest.raises(NotFittedError):
        LogisticConjugacy().transform([[1.0]])
    with pytest.raises(MarketModelError):
        LogisticConjugacy(c0=0.8).fit()


def test_regime_classifier_matches_analytic_regime():
    X = np.array([[1.2, 1.0], [2.5, 1.0], [0.8, 1.0], [2.0, 1.5]])
    clf = RegimeClassifier().fit(X)
    expected = [analytic_regime(sweep_params(c, r)).name for c, r in X]
    assert clf.predict(X).tolist() == expected
    assert set(expected) <= set(clf.classes_)
    assert clf.decision_function(X)[0] == pytest.approx(0.2)


def test_regime_classifier_empirical_and_pipeline():
    cfg = RunConfig(burn_in=2000, window=300, max_period=64)
    X = np.array([[1.2, 1.0], [1.8, 1.0]])
    pipe = make_pipeline(FunctionTransformer(), RegimeClassifier(config=cfg))
    pipe.fit(X)
    assert pipe.predict(X).tolist() == ["StableCoexistence", "StableCoexistence"]
    assert pipe[-1].predict_empirical(X).tolist() == ["Period1", "Period2"]


def test_regime_classifier_validates_shape():
    with pytest.raises(ValueError):
        RegimeClassifier().fit(np.ones((3, 3)))


def test_period_doubling_locator():
    loc = PeriodDoublingLocator(k_max=3).fit()
    assert loc.points_[0] == pytest.approx(0.75, abs=1e-4)
    assert loc.feigenbaum_ == pytest.approx(4.75, abs=0.02)
    assert loc.predict([[0.7], [0.8], [1.0]]).tolist() == [1, 2, -1]
