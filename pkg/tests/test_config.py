import pytest

from market_cascade.config import RunConfig


def test_defaults():
    cfg = RunConfig()
    assert (cfg.burn_in, cfg.window, cfg.period_tol, cfg.max_period, cfg.bisect_tol) == (10_000, 4096, 1e-6, 1024, 1e-6)
    assert cfg.seed_z == 0.31830988
    assert cfg.divergence_threshold == 1e12


def test_parse_key_value_lines_with_comments():
    cfg = RunConfig.parse("# solver\nburn_in = 500  # shorter\n\nperiod_tol=1e-8\n")
    assert cfg.burn_in == 500 and isinstance(cfg.burn_in, int)
    assert cfg.period_tol == 1e-8


@pytest.mark.parametrize("text", ["nonsense = 3", "burn_in 3", "burn_in = -1", "window = abc", "window = 10"])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ValueError):
        RunConfig.parse(text)


def test_from_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("window = 2048\n")
    assert RunConfig.from_file(path).window == 2048


def test_replace_rejects_unknown_keys():
    with pytest.raises(ValueError):
        RunConfig().replace(bogus=1)
