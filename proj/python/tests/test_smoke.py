import math

import pytest

import mescale


def short_config():
    config = mescale.default_config()
    config["horizon_s"] = 2 * 86400.0
    return config


def test_simulate_returns_columns_and_metrics():
    out = mescale.simulate(short_config())
    assert len(out["columns"]["V2_pu"]) == 192
    assert set(mescale.metric_names()) <= set(out["metrics"])
    assert out["metrics"]["max_v2_pu"] > 0.9


def test_simulation_is_deterministic():
    assert mescale.simulate(short_config()) == mescale.simulate(short_config())


def test_voltage_limit_example():
    assert mescale.voltage_power_limit(0.94, 20, 0.96, 100) == pytest.approx(60.0)


def test_tank_volume():
    assert mescale.tank_volume_m3(1.0) == pytest.approx(math.pi / 4 * 7.9)


def test_sobol_on_linear_model():
    n, k = 256, 2
    d = mescale.design("sobol", [
        {"name": "x1", "kind": "scenario", "min": 0, "max": 1, "base": 0.5, "unit": ""},
        {"name": "x2", "kind": "scenario", "min": 0, "max": 1, "base": 0.5, "unit": ""},
    ], samples=n)
    y = [r["assignments"]["x1"] + 2 * r["assignments"]["x2"] for r in d["recipes"]]
    idx = mescale.sobol_indices(n, k, y, resamples=100)
    assert idx["s1"][0] == pytest.approx(0.2, abs=0.03)
    assert idx["st"][1] == pytest.approx(0.8, abs=0.03)


def test_oat_campaign_and_ranking(tmp_path):
    d = mescale.design("oat")
    summary = mescale.run_campaign(d, tmp_path, config=short_config(), jobs=2)
    assert summary["runs"] == 15 and summary["failed"] == 0
    ranking = mescale.analyze("oat", tmp_path)
    assert ranking["kind"] == "oat"


def test_bad_input_raises_value_error():
    config = short_config()
    config["tank"]["inner_diameter_m"] = -1.0
    with pytest.raises(ValueError):
        mescale.simulate(config)
    with pytest.raises(mescale.ValidationError):
        mescale.design("nonsense")
