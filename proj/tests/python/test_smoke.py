import math
import os
import pathlib

import numpy as np
import pytest

import relaycci as rc

PRESETS = pathlib.Path(os.environ.get("RELAYCCI_PRESET_DIR", "presets"))


def rayleigh(k):
    return rc.SystemConfig.symmetric(rc.HopParams(1.0, 1.0, 1.0, 1.0), k)


def test_closed_forms():
    assert rc.hop_sir_cdf(rc.HopParams(1.0, 1.0, 1.0, 1.0), 1.0, 1.0) == pytest.approx(0.5)
    b = rc.outage_bounds(rayleigh(2), 1.0)
    assert b.low == pytest.approx(0.75)
    assert b.high == pytest.approx(8.0 / 9.0)
    assert rc.upper_bound_cdf(rayleigh(3), 1.0) == pytest.approx(0.875)
    assert rc.lower_bound_cdf(rayleigh(2), 0.5) == pytest.approx(0.75)
    assert rc.end_to_end_sir([2.0, 2.0]) == pytest.approx(1.0)


def test_gains():
    cfg = rc.SystemConfig.symmetric(rc.HopParams(1.0, 1.7, 100.0, 10.0), 2)
    g = rc.gains(cfg)
    assert g.diversity == 1.0
    assert g.coding == pytest.approx(20.0, rel=1e-13)


def test_simulation():
    est = rc.simulate_outage(rayleigh(1), 1.0, trials=200_000, seed=3)
    assert abs(est.mean - 0.5) < 3 * est.std_error
    again = rc.simulate_outage(rayleigh(1), 1.0, trials=200_000, seed=3, workers=4)
    assert again.mean == est.mean

    s = rc.sample_e2e(rayleigh(3), 10_000, seed=4)
    assert s.shape == (10_000, 3)
    assert np.all(s[:, 2] <= s[:, 0]) and np.all(s[:, 0] <= s[:, 1])
    assert np.array_equal(s[:, 2], s[:, 1] / 3.0)


def test_errors():
    with pytest.raises(ValueError):
        rc.SystemConfig([rc.HopParams(-1.0, 1.0, 1.0, 1.0)])
    with pytest.raises(rc.DomainError):
        rc.outage_bounds(rayleigh(2), 0.0)
    with pytest.raises(rc.ConfigError):
        rc.run_experiment_csv("/nonexistent.json")


def test_experiment_csv():
    text = rc.run_experiment_csv(str(PRESETS / "fig2.json"), analysis_only=True)
    lines = text.strip().splitlines()
    assert lines[0] == "snr_db,outage_low,outage_high,outage_mc,mc_stderr,asymptote"
    assert len(lines) == 43
    assert lines[1].split(",")[3] == ""
    assert rc.db_to_linear(10.0) == pytest.approx(10.0)
    assert math.isclose(rc.linear_to_db(100.0), 20.0)
