# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from formation_resilience.control import ControllerGains
from formation_resilience.control import GainTuner
from formation_resilience.control import TuningMode
from formation_resilience.control import TuningParams
from formation_resilience.control import tune_gain
from formation_resilience.control import tune_gain_from_errors
from formation_resilience.exception import ConfigurationError

PARAMS = TuningParams(gamma=1.0, sigma_beta=3.0, chi_beta=0.5)


def test_threshold_keeps_the_gain():
    assert tune_gain(1.2, 0.5, PARAMS, 0.01, (0.0, 2.0)) == 1.2


def test_full_quality_raises_the_gain():
    updated = tune_gain(1.0, 1.0, PARAMS, 0.01, (0.0, 2.0))
    assert updated - 1.0 == pytest.approx(0.01 * math.tanh(1.5))
    assert updated - 1.0 == pytest.approx(0.0090515, abs=1e-7)
    assert tune_gain(1.999, 1.0, PARAMS, 0.01, (0.0, 2.0)) == 2.0


def test_projection_at_the_lower_bound():
    assert tune_gain(0.0, 0.0, PARAMS, 0.01, (0.0, 2.0)) == 0.0


def test_error_driven_tuning():
    params = TuningParams(gamma=1.0, alpha=2.0)
    lowered = tune_gain_from_errors(1.0, 0.0, 1.0, params, 0.01, (0.0, 2.0))
    assert lowered == pytest.approx(1.0 - 0.01 * math.tanh(2.0))
    raised = tune_gain_from_errors(1.0, 1.0, 0.0, params, 0.01, (0.0, 2.0))
    assert raised == pytest.approx(1.0 + 0.01 * math.tanh(1.0))


@pytest.mark.parametrize(
    "values",
    [
        {"gamma": 0.0},
        {"sigma_beta": -1.0},
        {"chi_beta": 0.0},
        {"chi_beta": 1.5},
        {"alpha": 0.0},
    ],
)
def test_invalid_params(values):
    with pytest.raises(ConfigurationError):
        TuningParams(**values)


def test_tuner_waits_for_activation_and_stays_in_bounds():
    gains = ControllerGains.uniform(3, 2, 2.0, 2.0, kappa_g_upper=2.0)
    tuner = GainTuner(
        gains, [PARAMS] * 3, TuningMode.BETA, enabled=True, activation_time=1.0
    )
    betas = np.array([0.0, 1.0, 0.5])
    zeros = np.zeros(3)
    assert not tuner.is_active(0.5)
    assert np.array_equal(tuner.update(0.5, 0.01, betas, zeros, zeros), [2.0] * 3)
    for k in range(400):
        kappa_g = tuner.update(1.0 + k * 0.01, 0.01, betas, zeros, zeros)
        assert np.all(kappa_g >= 0.0) and np.all(kappa_g <= 2.0)
    assert np.array_equal(tuner.kappa_g, [0.0, 2.0, 2.0])
    with pytest.raises(ValueError):
        tuner.kappa_g[0] = 1.0


def test_disabled_tuner_keeps_the_nominal_gains():
    gains = ControllerGains.uniform(3, 2, 2.0, 1.5)
    tuner = GainTuner(gains, [PARAMS] * 3)
    assert not tuner.enabled
    assert np.array_equal(
        tuner.update(5.0, 0.01, np.zeros(3), np.zeros(3), np.zeros(3)),
        [1.5] * 3,
    )
    with pytest.raises(ConfigurationError):
        GainTuner(gains, [PARAMS] * 2)
