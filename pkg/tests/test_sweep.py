import importlib
import math

import numpy as np
import pytest

from market_cascade.config import RunConfig
from market_cascade.sweep import (
    Regime,
    RegimeKind,
    analytic_regime,
    classify_regime,
    empirical_regime,
    empirical_summaries,
    sweep,
    sweep_params,
)


def test_classify_regime_examples():
    regime, emp = classify_regime(sweep_params(1.2, 1.0))
    assert regime.kind is RegimeKind.StableCoexistence
    assert emp.period == 1 and emp.lyapunov < 0

    regime, emp = classify_regime(sweep_params(2.5, 1.0))
    assert regime.kind is RegimeKind.StateUnstable

    regime, emp = classify_regime(sweep_params(4.0, 1.0))
    assert regime.kind in (RegimeKind.PrivateUnstable, RegimeKind.BothUnstable)
    assert empirical_regime(emp).kind in (RegimeKind.Chaotic, RegimeKind.Divergent, RegimeKind.PeriodK)


def test_price_bound_violation_gets_its_own_label():
    assert analytic_regime(sweep_params(2.0, 1.5)).kind is RegimeKind.PriceBoundViolated


def test_no_positive_equilibrium_below_unit_income():
    for c in (0.5, 0.8, 1.0):
        for ratio in (0.5, 1.0, 1.9):
            assert analytic_regime(sweep_params(c, ratio)).kind is RegimeKind.NoPositiveEquilibrium


def test_regime_names_round_trip():
    for kind in RegimeKind:
        regime = Regime(kind, 8) if kind is RegimeKind.PeriodK else Regime(kind)
        assert Regime.from_name(regime.name) == regime
    assert Regime(RegimeKind.PeriodK, 4).name == "Period4"


def test_two_by_two_grid_matches_pointwise_classification():
    grid = sweep(1.2, 2.5, 1.0, 1.5, 2, 2)
    assert len(grid.cells) == 4
    for i, c in enumerate(grid.c_axis):
        for j, r in enumerate(grid.ratio_axis):
            cell = grid.cell(i, j)
            regime, emp = classify_regime(sweep_params(float(c), float(r)))
            assert cell.analytic == regime
            assert cell.empirical_period == emp.period
            assert (cell.lyapunov == emp.lyapunov) or (math.isnan(cell.lyapunov) and math.isnan(emp.lyapunov))


def test_sweep_is_independent_of_chunking(monkeypatch):
    sweep_mod = importlib.import_module("market_cascade.sweep")

    cfg = RunConfig(burn_in=500, window=300, max_period=64)
    full = sweep(0.9, 3.2, 0.6, 1.8, 6, 5, cfg)
    monkeypatch.setattr(sweep_mod, "CHUNK", 7)
    chunked = sweep(0.9, 3.2, 0.6, 1.8, 6, 5, cfg)
    for a, b in zip(full.cells, chunked.cells):
        assert a.analytic == b.analytic and a.empirical_period == b.empirical_period
        assert np.array_equal(np.float64(a.lyapunov), np.float64(b.lyapunov), equal_nan=True)


def test_coexistence_region_closes_at_four_thirds():
    ratios = np.linspace(0.5, 2.0, 61)
    stable_ratios = [
        r for r in ratios
        if any(analytic_regime(sweep_params(c, float(r))).kind is RegimeKind.StableCoexistence for c in np.linspace(1.01, 3.0, 200))
    ]
    assert max(stable_ratios) <= 4 / 3 + 1e-12
    assert max(stable_ratios) > 4 / 3 - 0.03


def test_sweep_rejects_bad_axes():
    with pytest.raises(ValueError):
        sweep(2.0, 1.0, 0.5, 1.0, 3, 3)
    with pytest.raises(ValueError):
        sweep(1.0, 2.0, 0.5, 1.0, 1, 3)


def test_divergent_cells_report_nan_lyapunov():
    (s,) = empirical_summaries([sweep_params(4.0, 1.0)], RunConfig(burn_in=200, window=200, max_period=50))
    assert s.diverged and math.isnan(s.lyapunov)
