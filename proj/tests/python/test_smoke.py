import math

import numpy as np
import pytest

import gch


def test_helmholtz_round_trip():
    ws = gch.Workspace(20.0, 512)
    rng = np.random.default_rng(1)
    u = rng.standard_normal(512)
    back = ws.helmholtz_invert(ws.helmholtz_apply(u))
    assert np.max(np.abs(back - u)) < 1e-12 * np.max(np.abs(u))


def test_breaking_certificate_on_steep_gaussian():
    ws = gch.Workspace(8.0, 4096)
    u0 = 0.5 * np.exp(-((ws.x / 0.5) ** 2))
    c = gch.breaking_certificate(ws, u0, gch.ModelParams(0.001, 0.003, 0.004, 0.001))
    assert c["holds"]
    assert c["p"] == 1
    assert c["y0"] == pytest.approx(-math.sqrt(2) * 0.5 / 0.5 * math.exp(-0.5), abs=1e-6)


def test_global_certificate_patterns():
    ws = gch.Workspace(20.0, 1024)
    m = np.tanh(ws.x) * np.exp(-ws.x**2)
    u = ws.helmholtz_invert(m)
    assert gch.global_certificate(ws, u, "NegThenPos")["holds"]
    assert not gch.global_certificate(ws, u, "SingleSign")["holds"]
    with pytest.raises(ValueError):
        gch.global_certificate(ws, u, "Sideways")


def test_presets_and_simulate():
    names = [n for n, _ in gch.presets()]
    assert "steep" in names and "zero" in names
    report, traj = gch.simulate("zero")
    assert report["classification"]["classification"] == "RanToHorizon"
    assert report["exit_code"] == 0
    assert "wall_time" not in report
    assert len(traj["t"]) == 11
    assert np.all(traj["linf_u"] == 0.0)


def test_simulate_from_dict_is_deterministic():
    cfg = gch.preset("both_fail")
    cfg["grid"]["n"] = 256
    cfg["time"]["t_end"] = 0.3
    a, ta = gch.simulate(cfg)
    b, tb = gch.simulate(cfg)
    assert a == b
    assert np.array_equal(ta["min_ux"], tb["min_ux"])


def test_bad_config_raises():
    cfg = gch.preset("zero")
    cfg["grid"]["colour"] = 1
    with pytest.raises(gch.ConfigError):
        gch.simulate(cfg)


def test_verify_and_rotation():
    verdicts = gch.verify(["rotation", "pss"])
    assert verdicts and all(v["pass"] for v in verdicts)
    with pytest.raises(ValueError):
        gch.verify(["nope"])
    rc = gch.rotation_constants(0.0)
    assert rc["params"]["beta"] == 0.0 and rc["params"]["gamma"] == 0.0
    p = gch.ModelParams(alpha=0.1, beta=-0.9)
    assert p.K == pytest.approx(1.2)
