import math

import pytest

import smile


BELIEF = [0.5, 0.3, 0.2]
ROW = [0.1, 0.6, 0.3]


def test_surprise_measures():
    # Reference values computed at 40 digits.
    assert smile.confidence_corrected_surprise(BELIEF, ROW) == pytest.approx(
        0.51568178042743371808, rel=1e-12)
    assert smile.shannon_surprise(BELIEF, ROW) == pytest.approx(
        1.2378743560016173409, rel=1e-12)
    assert smile.bayesian_surprise(BELIEF, ROW) == pytest.approx(
        0.30746043849038990464, rel=1e-12)


def test_smile_step():
    q, diag = smile.smile_step(BELIEF, ROW, m=0.1)
    assert diag["gamma"] == pytest.approx(0.1763234637813393923, rel=1e-7)
    assert sum(q) == pytest.approx(1.0)
    assert smile.kl_categorical(q, BELIEF) == pytest.approx(diag["bound"], rel=1e-8)
    assert smile.smile_update(BELIEF, ROW, 0.0) == BELIEF


def test_gaussian_closed_form():
    mean, var, diag = smile.gaussian_smile_step(0.0, 16.0, 4.0, 16.0, m=0.1)
    assert diag["surprise"] == pytest.approx(0.5)
    assert diag["gamma"] == pytest.approx(math.sqrt(0.05 / 1.05))
    assert mean == pytest.approx(4.0 * diag["gamma"])
    assert var == 16.0


def test_special_functions():
    assert smile.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert smile.log_gamma(20.5) == pytest.approx(math.lgamma(20.5), rel=1e-14)
    euler = 0.57721566490153286061
    assert smile.digamma(1.0) == pytest.approx(-euler, rel=1e-14)


def test_dirichlet():
    alpha = [1.0] * 15
    updated = smile.dirichlet_smile_update(alpha, 3, 1.0)
    assert updated[3] == pytest.approx(2.0)
    assert smile.kl_dirichlet(alpha, alpha) == 0.0


def test_environment_helpers():
    p_ab, p_ba = smile.switch_probabilities(200, 0.5)
    assert p_ab == pytest.approx(0.005)
    assert p_ba == pytest.approx(0.005)
    assert list(smile.torus_topology()[0]) == [12, 4, 3, 1]


def test_selftest():
    checks = smile.selftest(seed=3)
    assert checks
    assert all(passed for _, passed, _ in checks)


def test_run_experiment_and_sweep():
    run = smile.run_experiment({"task": "gaussian", "steps": 100, "episodes": 2, "seed": 7})
    assert run["summary"]["samples"] == 200
    again = smile.run_experiment({"task": "gaussian", "steps": 100, "episodes": 2, "seed": 7})
    assert again == run
    sweep = smile.run_sweep({"task": "maze", "learner": "naive_bayes", "steps": 300,
                             "grid": {"tau_A": [100], "psi_A": [0.5, 1.0]}})
    assert len(sweep["rows"]) == 2
    assert sweep["rows"][1]["missing"]


def test_errors():
    with pytest.raises(smile.ConfigError):
        smile.run_experiment({"task": "gaussian", "tau_A": 100})
    with pytest.raises(smile.SmileError):
        smile.smile_update(BELIEF, ROW, 1.5)
    with pytest.raises(smile.InfiniteDivergence):
        smile.smile_step([0.5, 0.5], [0.0, 1.0])
