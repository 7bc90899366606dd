# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from scipy import integrate
from scipy import stats

from formation_resilience.estimation import estimation_lyapunov
from formation_resilience.estimation import EstimatorMode
from formation_resilience.estimation import EstimatorState
from formation_resilience.estimation import is_consistent
from formation_resilience.estimation import kl_divergence
from formation_resilience.estimation import MeasurementModels
from formation_resilience.estimation import predict
from formation_resilience.estimation import quality_measure
from formation_resilience.estimation import update
from formation_resilience.exception import ConfigurationError
from formation_resilience.exception import EstimatorDegenerateError


def _models(dimension=3, q=1e-4, gps=2.5e-7, relative=2.5e-7, chi=5.0):
    identity = np.eye(dimension)
    return MeasurementModels(q * identity, gps * identity, relative * identity, 0.01, chi)


def _spd(rng, dimension, scale=1.0):
    matrix = rng.normal(size=(dimension, dimension))
    return scale * (matrix @ matrix.T + 0.1 * np.eye(dimension))


def test_prediction():
    models = _models()
    state = EstimatorState.from_estimate(np.array([1.0, 2.0, 3.0]), 0.01 * np.eye(3))
    predicted = predict(state, np.array([1.0, 0.0, 0.0]), models)
    assert np.allclose(predicted.estimate, [1.01, 2.0, 3.0])
    assert np.allclose(predicted.covariance, (0.01 + 1e-8) * np.eye(3))
    assert predicted.mode is EstimatorMode.PREDICT_ONLY
    assert is_consistent(predicted)


def test_zero_innovation_gps_update():
    models = _models()
    prior = EstimatorState.from_estimate(np.array([0.5, -0.5, 1.0]), 1e-4 * np.eye(3))
    posterior = update(prior, prior.estimate.copy(), EstimatorMode.GPS, models)
    assert np.allclose(posterior.estimate, prior.estimate, atol=1e-12)
    expected = 1.0 / (1e4 + 1.0 / 2.5e-7)
    assert np.allclose(posterior.covariance, expected * np.eye(3))
    assert posterior.mode is EstimatorMode.GPS


def test_zero_innovation_relative_update():
    models = _models(dimension=2)
    prior = EstimatorState.from_estimate(np.array([1.0, 1.0]), 1e-4 * np.eye(2))
    neighbor_desired = np.array([2.0, 0.0])
    measurement = neighbor_desired - prior.estimate
    posterior = update(
        prior, measurement, EstimatorMode.RELATIVE, models, neighbor_desired
    )
    assert np.allclose(posterior.estimate, prior.estimate, atol=1e-12)
    assert np.all(np.diag(posterior.covariance) < np.diag(prior.covariance))


def test_update_arguments():
    models = _models(dimension=2)
    prior = EstimatorState.from_estimate(np.zeros(2), np.eye(2))
    with pytest.raises(ValueError):
        update(prior, np.zeros(2), EstimatorMode.RELATIVE, models)
    with pytest.raises(ValueError):
        update(prior, np.zeros(2), EstimatorMode.PREDICT_ONLY, models)


def test_information_form_matches_the_kalman_form():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        dimension = int(rng.integers(1, 4))
        covariance = _spd(rng, dimension)
        noise = _spd(rng, dimension, 0.5)
        identity = np.eye(dimension)
        models = MeasurementModels(identity, noise, noise, 0.01, 5.0)
        prior = EstimatorState.from_estimate(rng.normal(size=dimension), covariance)
        measurement = rng.normal(size=dimension)
        gain = covariance @ np.linalg.inv(covariance + noise)

        gps = update(prior, measurement, EstimatorMode.GPS, models)
        assert np.allclose(
            gps.estimate,
            prior.estimate + gain @ (measurement - prior.estimate),
            atol=1e-9,
        )
        assert np.allclose(gps.covariance, (identity - gain) @ covariance, atol=1e-9)

        neighbor_desired = rng.normal(size=dimension)
        relative = update(
            prior, measurement, EstimatorMode.RELATIVE, models, neighbor_desired
        )
        # s = h_j - x, so h_j - s observes x directly
        direct = neighbor_desired - measurement
        assert np.allclose(
            relative.estimate,
            prior.estimate + gain @ (direct - prior.estimate),
            atol=1e-9,
        )
        assert is_consistent(relative, 1e-9)


def test_relative_update_does_not_increase_the_error_metric():
    rng = np.random.default_rng(4)
    for _ in range(1000):
        dimension = int(rng.integers(1, 4))
        covariance = _spd(rng, dimension)
        noise = _spd(rng, dimension, 0.5)
        models = MeasurementModels(np.eye(dimension), noise, noise, 0.01, 5.0)
        truth = rng.normal(size=dimension)
        prior = EstimatorState.from_estimate(
            truth + rng.normal(size=dimension), covariance
        )
        # neighbor exactly on its desired position, noiseless measurement
        neighbor_desired = rng.normal(size=dimension)
        measurement = neighbor_desired - truth
        posterior = update(
            prior, measurement, EstimatorMode.RELATIVE, models, neighbor_desired
        )
        before = estimation_lyapunov(prior.estimate - truth, prior.information_matrix)
        after = estimation_lyapunov(
            posterior.estimate - truth, posterior.information_matrix
        )
        assert after <= before + 1e-9 * max(1.0, before)

        woodbury = covariance - np.linalg.inv(
            prior.information_matrix
            + prior.information_matrix @ noise @ prior.information_matrix
        )
        assert np.allclose(posterior.covariance, woodbury, atol=1e-9)


@pytest.mark.parametrize(
    "prior_var, relative_var, error",
    [
        ([1.0, 0.5], [0.25, 0.25], [1.0, -1.0]),
        ([0.2, 0.4, 0.1], [0.3, 0.1, 0.2], [0.5, 0.2, -0.4]),
    ],
)
def test_relative_update_mean_error_over_noise_draws(prior_var, relative_var, error):
    draws = 10000
    rng = np.random.default_rng(6)
    dimension = len(prior_var)
    covariance = np.diag(prior_var)
    noise = np.diag(relative_var)
    models = MeasurementModels(np.eye(dimension), noise, noise, 0.01, 5.0)
    truth = rng.normal(size=dimension)
    prior = EstimatorState.from_estimate(truth + np.array(error), covariance)
    neighbor_desired = rng.normal(size=dimension)
    # neighbor on its desired position, only the measurement noise remains
    measurements = neighbor_desired - truth + rng.multivariate_normal(
        np.zeros(dimension), noise, size=draws
    )
    errors = np.array(
        [
            update(
                prior, m, EstimatorMode.RELATIVE, models, neighbor_desired
            ).estimate
            - truth
            for m in measurements
        ]
    )
    posterior = update(
        prior,
        neighbor_desired - truth,
        EstimatorMode.RELATIVE,
        models,
        neighbor_desired,
    )
    gain = covariance @ np.linalg.inv(covariance + noise)
    expected = (np.eye(dimension) - gain) @ np.array(error)
    spread = np.sqrt(np.diag(gain @ noise @ gain.T) / draws)
    mean_error = errors.mean(axis=0)
    assert np.all(np.abs(mean_error - expected) <= 5.0 * spread)
    before = estimation_lyapunov(np.array(error), prior.information_matrix)
    after = estimation_lyapunov(mean_error, posterior.information_matrix)
    assert after < before


def test_kl_divergence_of_identical_distributions():
    rng = np.random.default_rng(5)
    for _ in range(50):
        state = EstimatorState.from_estimate(rng.normal(size=3), _spd(rng, 3))
        assert kl_divergence(state, state) == pytest.approx(0.0, abs=1e-12)


def test_kl_divergence_closed_form():
    prior = EstimatorState.from_estimate(np.array([0.0]), np.array([[1.0]]))
    posterior = EstimatorState.from_estimate(np.array([1.0]), np.array([[1.0]]))
    assert kl_divergence(prior, posterior) == pytest.approx(0.5)


@pytest.mark.parametrize(
    "prior_mean, prior_var, posterior_mean, posterior_var",
    [(0.0, 2.0, 0.5, 0.5), (1.0, 0.3, -0.2, 0.9), (0.0, 1.0, 0.0, 0.1)],
)
def test_kl_divergence_against_integration(
    prior_mean, prior_var, posterior_mean, posterior_var
):
    prior = EstimatorState.from_estimate(
        np.array([prior_mean]), np.array([[prior_var]])
    )
    posterior = EstimatorState.from_estimate(
        np.array([posterior_mean]), np.array([[posterior_var]])
    )
    p = stats.norm(prior_mean, math.sqrt(prior_var))
    q = stats.norm(posterior_mean, math.sqrt(posterior_var))
    expected, _ = integrate.quad(
        lambda x: p.pdf(x) * (p.logpdf(x) - q.logpdf(x)), -30.0, 30.0
    )
    assert kl_divergence(prior, posterior) == pytest.approx(expected, rel=1e-6)


def test_quality_measure():
    assert quality_measure(0.0, 5.0) == 1.0
    assert quality_measure(2.5, 5.0) == pytest.approx(0.5)
    assert quality_measure(5.0, 5.0) == 0.0
    assert quality_measure(1e9, 5.0) == 0.0
    with pytest.raises(ValueError):
        quality_measure(1.0, 0.0)


def test_degenerate_covariance():
    with pytest.raises(EstimatorDegenerateError):
        EstimatorState.from_estimate(np.zeros(2), np.zeros((2, 2)))
    with pytest.raises(EstimatorDegenerateError):
        EstimatorState.from_information(
            np.array([[1.0, 0.0], [0.0, np.nan]]), np.zeros(2), EstimatorMode.GPS
        )


def test_invalid_models():
    with pytest.raises(ConfigurationError):
        _models(chi=0.0)
    with pytest.raises(ConfigurationError):
        MeasurementModels(np.eye(2), -np.eye(2), np.eye(2), 0.01, 5.0)
