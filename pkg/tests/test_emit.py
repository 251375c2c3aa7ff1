import io
import math

import numpy as np

from market_cascade import emit
from market_cascade.market_map import MarketState, Orbit
from market_cascade.sweep import Regime, RegimeKind, SweepCell, SweepGrid, sweep
from market_cascade.config import RunConfig


def one_cell_grid(lyapunov=-0.25, period=1):
    cell = SweepCell(1.2, 1.0, Regime(RegimeKind.StableCoexistence), period, lyapunov)
    return SweepGrid(np.array([1.2]), np.array([1.0]), [cell])


def test_one_by_one_grid_has_header_and_one_row():
    buf = io.StringIO()
    emit.write_sweep_csv(one_cell_grid(), buf)
    lines = buf.getvalue().split("\n")
    assert lines[-1] == ""
    assert lines[:-1] == ["c,beta_ratio,analytic_regime,empirical_period,lyapunov", "1.2,1,StableCoexistence,1,-0.25"]


def test_absent_period_and_negative_infinity_encoding():
    buf = io.StringIO()
    emit.write_sweep_csv(one_cell_grid(-math.inf, None), buf)
    assert buf.getvalue().splitlines()[1] == "1.2,1,StableCoexistence,,-inf"


def test_sweep_csv_round_trip_is_bit_exact():
    grid = sweep(0.7, 3.3, 0.5, 2.0, 4, 3, RunConfig(burn_in=300, window=200, max_period=50))
    buf = io.StringIO()
    emit.write_sweep_csv(grid, buf)
    back = emit.read_sweep_csv(io.StringIO(buf.getvalue()))
    assert len(back) == len(grid.cells)
    for a, b in zip(grid.cells, back):
        assert (a.c, a.beta_ratio, a.analytic, a.empirical_period) == (b.c, b.beta_ratio, b.analytic, b.empirical_period)
        assert np.float64(a.lyapunov).tobytes() == np.float64(b.lyapunov).tobytes() or (math.isnan(a.lyapunov) and math.isnan(b.lyapunov))


def test_orbit_csv_round_trip():
    rng = np.random.default_rng(0)
    orbit = Orbit([MarketState(*rng.normal(size=2)) for _ in range(20)] + [MarketState(math.inf, -math.inf)], True, 20)
    buf = io.StringIO()
    emit.write_orbit_csv(orbit, buf)
    assert emit.read_orbit_csv(io.StringIO(buf.getvalue())) == orbit.states


def test_bifurcation_csv_one_row_per_sample():
    buf = io.StringIO()
    emit.write_bifurcation_csv([(0.6, [0.58]), (0.65, [0.61]), (0.7, [0.64])], buf)
    assert len(buf.getvalue().splitlines()) == 4
    assert buf.getvalue().startswith("gamma,z_sample\n")


def test_svg_center_point_and_determinism():
    out1, out2 = io.StringIO(), io.StringIO()
    emit.write_svg([(0.5, 2.0)], (0.0, 1.0, 1.0, 3.0), out1)
    emit.write_svg([(0.5, 2.0)], (0.0, 1.0, 1.0, 3.0), out2)
    svg = out1.getvalue()
    assert svg == out2.getvalue()
    assert '<circle cx="512.000" cy="384.000" r="0.5"/>' in svg
    assert 'width="1024" height="768"' in svg
    assert ">0<" in svg and ">1<" in svg and ">3<" in svg


def test_svg_rejects_empty_or_degenerate_input():
    import pytest

    with pytest.raises(ValueError):
        emit.write_svg([], (0, 1, 0, 1), io.StringIO())
    with pytest.raises(ValueError):
        emit.write_svg([(0, 0)], (0, 0, 0, 1), io.StringIO())


def test_pgm_layout():
    grid = sweep(0.5, 1.5, 1.0, 1.2, 2, 3, RunConfig(burn_in=100, window=100, max_period=20))
    buf = io.StringIO()
    emit.write_pgm(grid, buf)
    lines = buf.getvalue().splitlines()
    assert lines[:3] == ["P2", "3 2", "255"]
    # bottom row is the lowest c (no positive equilibrium), top row c = 1.5 is stable
    assert lines[4] == "0 0 0"
    assert lines[3] == "255 255 255"
