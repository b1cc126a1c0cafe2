import math

import numpy as np
import pytest

import switchkit as sk


def test_time_to_level_closed_form():
    assert sk.time_to_level(sk.KLExp(2.0, 0.25), 4.0, 0.1) == pytest.approx(4.0 * math.log(80.0))


def test_dwell_from_beta_with_margin():
    assert sk.dwell_from_beta(sk.KLExp(2.0, 1.0), 1.0, 0.5, 0.25) == pytest.approx(math.log(8.0))


def test_invalid_estimate_raises():
    with pytest.raises(ValueError):
        sk.KLExp(0.5, 1.0)


def test_optimal_threshold_prefers_faster_upper_mode():
    delta, total = sk.optimal_threshold(sk.KLExp(1.0, 2.0), sk.KLExp(1.0, 1.0), 10.0, 0.01, 1e-5)
    assert delta == pytest.approx(0.01 + 1e-5)
    assert total == pytest.approx(math.log(1000.0) / 2.0, abs=1e-3)


def test_lyapunov_and_hurwitz():
    P = sk.solve_lyapunov_small(np.diag([-1.0, -2.0]), 1.0)
    np.testing.assert_allclose(P, np.diag([1.0, 1.0 / 3.0]), atol=1e-14)
    assert sk.is_hurwitz(-np.eye(3))
    assert not sk.is_hurwitz(np.zeros((2, 2)))


def test_gain_from_eigs():
    assert sk.gain_from_eigs(3.0, 3.0) == (6.0, 9.0)


def test_pendulum_hybrid_beats_single_observers():
    hybrid = sk.run_pendulum()
    fast = sk.run_pendulum("fast")
    slow = sk.run_pendulum("slow")
    assert hybrid["name"] == "hybrid"
    assert hybrid["switch_count"] >= 1
    assert hybrid["peak_e2"] <= 0.7 * fast["peak_e2"]
    assert hybrid["time_to_level"] <= 0.7 * slow["time_to_level"]
    assert hybrid["states"].shape == (len(hybrid["t"]), 4)


def test_lorenz_cells():
    none = sk.run_lorenz_cell("none", "small")
    assert none["J_u"] == 0.0
    sup = sk.run_lorenz_cell("supervisor", "large")
    cancel = sk.run_lorenz_cell("cancel", "large")
    assert sup["J_u"] < 0.05 * cancel["J_u"]
    assert all(abs(b - a) == 1 for _, a, b in sup["switches"])
    with pytest.raises(ValueError):
        sk.run_lorenz_cell("supervisor", "medium")


def test_cli_exit_codes(tmp_path):
    assert sk.cli(["--out", str(tmp_path), "sweep-threshold", "--rates", "2,1"]) == 0
    assert (tmp_path / "sweep_threshold.csv").exists()
    assert sk.cli(["lorenz-table", "--bogus"]) == 2
