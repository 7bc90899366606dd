# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    information_filter

Description:
    Extended information filter of one agent with the motion model
    x(k) = x(k-1) + v(k) dt and two measurement models: the global
    positioning (H = I) and the relative displacement to a neighbor j
    compared with the desired position of that neighbor (H = -I, predicted
    measurement h_j^d - x). Estimates are kept both in information form
    (Phi = P^-1, phi = Phi x) and in covariance form.

    The module also holds the Kullback-Leibler divergence between the prior
    and the posterior of an update, and the quality measure derived from it.

Classes:
    EstimatorMode
    MeasurementModels
    EstimatorState

Author:
    formation-resilience developers
"""
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from typing import Optional
from typing import Tuple

import numpy as np
from scipy.linalg import cho_factor
from scipy.linalg import cho_solve
from scipy.linalg import LinAlgError

from ..exception import ConfigurationError
from ..exception import EstimatorDegenerateError
from ..utils import DocEnum

logger = logging.getLogger(__name__)

Cholesky = Tuple[np.ndarray, bool]


class EstimatorMode(DocEnum):
    INITIAL = ("initial", "Initial estimate, no update yet")
    GPS = ("gps", "Global positioning accepted")
    RELATIVE = ("relative", "Global positioning rejected, cooperative localization")
    PREDICT_ONLY = (
        "predict-only",
        "Global positioning rejected and no neighbor, prediction only",
    )
    DISABLED = ("disabled", "Estimator not run")


def _cholesky(matrix: np.ndarray, reason: str) -> Cholesky:
    """Cholesky factor of a SPD matrix.

    Raises:
        EstimatorDegenerateError: the matrix is not SPD
    """
    if not np.all(np.isfinite(matrix)):
        raise EstimatorDegenerateError(f"{reason}: non-finite matrix")
    try:
        return cho_factor(matrix, lower=True, check_finite=False)
    except LinAlgError as error:
        raise EstimatorDegenerateError(f"{reason}: {error}") from error


def _log_det(factor: Cholesky) -> float:
    return 2.0 * float(np.sum(np.log(np.diag(factor[0]))))


def _symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


@dataclass(frozen=True, eq=False)
class MeasurementModels:
    """Models shared by the estimators of a run.

    Attributes:
        process_cov (np.ndarray): Q, covariance of the velocity noise
        gps_cov (np.ndarray): R^GPS
        relative_cov (np.ndarray): R^r
        dt (float): step
        chi (float): detection threshold on the KL divergence
    """

    process_cov: np.ndarray
    gps_cov: np.ndarray
    relative_cov: np.ndarray
    dt: float
    chi: float
    gps_information: np.ndarray = field(init=False, repr=False)
    relative_information: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.chi <= 0:
            raise ConfigurationError("chi must be > 0", "estimator.chi")
        if self.dt <= 0:
            raise ConfigurationError("dt must be > 0", "simulation.dt")
        for name in ("process_cov", "gps_cov", "relative_cov"):
            matrix = np.asarray(getattr(self, name), dtype=float)
            try:
                _cholesky(matrix, name)
            except EstimatorDegenerateError as error:
                raise ConfigurationError(
                    "covariance must be symmetric positive definite",
                    f"estimator.{name}",
                ) from error
            object.__setattr__(self, name, matrix)
        object.__setattr__(self, "gps_information", np.linalg.inv(self.gps_cov))
        object.__setattr__(
            self, "relative_information", np.linalg.inv(self.relative_cov)
        )

    @property
    def dimension(self) -> int:
        return self.process_cov.shape[0]

    @property
    def gps_jacobian(self) -> np.ndarray:
        return np.eye(self.dimension)

    @property
    def relative_jacobian(self) -> np.ndarray:
        return -np.eye(self.dimension)


@dataclass(frozen=True, eq=False)
class EstimatorState:
    """Estimate of one agent in information and covariance forms.

    Attributes:
        information_matrix (np.ndarray): Phi
        information_vector (np.ndarray): phi = Phi x
        estimate (np.ndarray): x
        covariance (np.ndarray): P = Phi^-1
        kl_divergence (float): last KL statistic
        beta (float): last quality measure in [0, 1]
        mode (EstimatorMode): last update path
    """

    information_matrix: np.ndarray
    information_vector: np.ndarray
    estimate: np.ndarray
    covariance: np.ndarray
    kl_divergence: float = 0.0
    beta: float = 1.0
    mode: EstimatorMode = EstimatorMode.INITIAL

    @classmethod
    def from_estimate(
        cls,
        estimate: np.ndarray,
        covariance: np.ndarray,
        mode: EstimatorMode = EstimatorMode.INITIAL,
    ) -> "EstimatorState":
        """Builds a state from an estimate and a covariance.

        Raises:
            EstimatorDegenerateError: covariance not SPD
        """
        covariance = _symmetrize(np.asarray(covariance, dtype=float))
        factor = _cholesky(covariance, "covariance")
        information_matrix = _symmetrize(
            cho_solve(factor, np.eye(covariance.shape[0]), check_finite=False)
        )
        estimate = np.asarray(estimate, dtype=float)
        return cls(
            information_matrix=information_matrix,
            information_vector=information_matrix @ estimate,
            estimate=estimate,
            covariance=covariance,
            mode=mode,
        )

    @classmethod
    def from_information(
        cls,
        information_matrix: np.ndarray,
        information_vector: np.ndarray,
        mode: EstimatorMode,
    ) -> "EstimatorState":
        """Recovers x = Phi^-1 phi and P = Phi^-1.

        Raises:
            EstimatorDegenerateError: Phi not SPD
        """
        information_matrix = _symmetrize(information_matrix)
        factor = _cholesky(information_matrix, "information matrix")
        size = information_matrix.shape[0]
        covariance = _symmetrize(
            cho_solve(factor, np.eye(size), check_finite=False)
        )
        estimate = cho_solve(factor, information_vector, check_finite=False)
        return cls(
            information_matrix=information_matrix,
            information_vector=information_vector,
            estimate=estimate,
            covariance=covariance,
            mode=mode,
        )

    def with_statistics(
        self, kl_divergence: float, beta: float, mode: Optional[EstimatorMode] = None
    ) -> "EstimatorState":
        return replace(
            self,
            kl_divergence=kl_divergence,
            beta=beta,
            mode=self.mode if mode is None else mode,
        )


def predict(
    state: EstimatorState, velocity: np.ndarray, models: MeasurementModels
) -> EstimatorState:
    """Prediction x(k|k-1) = x(k-1|k-1) + v dt, P(k|k-1) = P + dt^2 Q.

    Args:
        state (EstimatorState): estimate at k-1
        velocity (np.ndarray): measured velocity at k
        models (MeasurementModels): models

    Raises:
        EstimatorDegenerateError: the predicted covariance is not SPD

    Returns:
        EstimatorState: prediction, mode predict-only
    """
    estimate = state.estimate + velocity * models.dt
    covariance = state.covariance + models.dt**2 * models.process_cov
    predicted = EstimatorState.from_estimate(
        estimate, covariance, EstimatorMode.PREDICT_ONLY
    )
    return predicted.with_statistics(state.kl_divergence, state.beta)


def update(
    predicted: EstimatorState,
    measurement: np.ndarray,
    mode: EstimatorMode,
    models: MeasurementModels,
    neighbor_desired: Optional[np.ndarray] = None,
) -> EstimatorState:
    """Information update with one measurement.

    Phi+ = Phi- + H^T R^-1 H and phi+ = phi- + H^T R^-1 (s - s_hat + H x-),
    with s_hat = x- for the positioning and s_hat = h_j^d - x- for a
    relative displacement s = x_j - x_i.

    Args:
        predicted (EstimatorState): prior
        measurement (np.ndarray): s
        mode (EstimatorMode): GPS or RELATIVE
        models (MeasurementModels): models
        neighbor_desired (Optional[np.ndarray]): h_j^d, relative mode only

    Raises:
        ValueError: wrong mode or missing neighbor desired position
        EstimatorDegenerateError: singular posterior

    Returns:
        EstimatorState: posterior
    """
    prior = predicted.estimate
    match mode:
        case EstimatorMode.GPS:
            sign = 1.0
            information = models.gps_information
            predicted_measurement = prior
        case EstimatorMode.RELATIVE:
            if neighbor_desired is None:
                raise ValueError("a relative update needs h_j^d")
            sign = -1.0
            information = models.relative_information
            predicted_measurement = neighbor_desired - prior
        case _:
            raise ValueError(f"no measurement update for mode {mode.value}")
    # H = sign * I
    information_matrix = predicted.information_matrix + information
    innovation = measurement - predicted_measurement + sign * prior
    information_vector = predicted.information_vector + sign * (
        information @ innovation
    )
    posterior = EstimatorState.from_information(
        information_matrix, information_vector, mode
    )
    return posterior.with_statistics(predicted.kl_divergence, predicted.beta)


def kl_divergence(prior: EstimatorState, posterior: EstimatorState) -> float:
    """KL divergence between the prior and the posterior of an update.

    D = 1/2 [ d^T Phi+ d + tr(Phi+ Phi-^-1) + ln(det Phi- / det Phi+) - n ]
    with d = x+ - x-.

    Args:
        prior (EstimatorState): x(k|k-1), Phi(k|k-1)
        posterior (EstimatorState): x(k|k), Phi(k|k)

    Raises:
        EstimatorDegenerateError: an information matrix is not SPD

    Returns:
        float: the divergence, >= 0
    """
    prior_factor = _cholesky(prior.information_matrix, "prior information")
    posterior_factor = _cholesky(
        posterior.information_matrix, "posterior information"
    )
    difference = posterior.estimate - prior.estimate
    quadratic = float(difference @ posterior.information_matrix @ difference)
    trace = float(
        np.trace(
            cho_solve(
                prior_factor, posterior.information_matrix, check_finite=False
            )
        )
    )
    log_ratio = _log_det(prior_factor) - _log_det(posterior_factor)
    size = prior.estimate.size
    return max(0.5 * (quadratic + trace + log_ratio - size), 0.0)


def quality_measure(divergence: float, chi: float) -> float:
    """beta = 1 - sat(D / chi), in [0, 1].

    Args:
        divergence (float): KL divergence, >= 0
        chi (float): detection threshold, > 0

    Returns:
        float: the quality measure
    """
    if chi <= 0:
        raise ValueError("chi must be > 0")
    return 1.0 - min(max(divergence / chi, 0.0), 1.0)


def estimation_lyapunov(error: np.ndarray, information_matrix: np.ndarray) -> float:
    """V = e^T Phi e, the quadratic form of an estimation error."""
    return float(error @ information_matrix @ error)


def is_consistent(state: EstimatorState, tolerance: float = 1e-10) -> bool:
    """True when x = Phi^-1 phi and P = Phi^-1 hold to a relative tolerance."""
    identity = state.information_matrix @ state.covariance
    size = identity.shape[0]
    recovered = np.linalg.solve(state.information_matrix, state.information_vector)
    scale = max(1.0, float(np.linalg.norm(state.estimate)))
    return bool(
        np.allclose(identity, np.eye(size), atol=tolerance * 10, rtol=0)
        and np.linalg.norm(recovered - state.estimate) <= tolerance * scale * 10
        and math.isfinite(state.kl_divergence)
    )
