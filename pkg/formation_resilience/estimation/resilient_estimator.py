# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    resilient_estimator

Description:
    Resilient state estimator of one agent. At each step the estimate is
    predicted with the measured velocity and a tentative update with the
    global positioning signal is computed. The KL divergence between the
    prediction and this tentative posterior gives the quality measure beta.
    Below the threshold chi the update is accepted. Otherwise it is dropped
    and the estimator switches to cooperative localization: one relative
    update per neighbor, in ascending neighbor index, applied on the
    prediction with the desired position of the neighbor as reference.
    Without neighbor the prediction is kept.

Classes:
    ResilientEstimator

Author:
    formation-resilience developers

.. uml::

    class ResilientEstimator {
        +int agent
        +EstimatorState state
        +step(velocity, gps, relatives, desired_positions) EstimatorState
    }
    ResilientEstimator --> MeasurementModels
    ResilientEstimator --> EstimatorState
"""
import logging
from typing import Mapping
from typing import Optional
from typing import Tuple

import numpy as np

from ..exception import EstimatorDegenerateError
from .information_filter import EstimatorMode
from .information_filter import EstimatorState
from .information_filter import kl_divergence
from .information_filter import MeasurementModels
from .information_filter import predict
from .information_filter import quality_measure
from .information_filter import update

logger = logging.getLogger(__name__)

DEFAULT_INITIAL_VARIANCE = 1e-4


def resilient_step(
    state: EstimatorState,
    velocity: np.ndarray,
    gps: np.ndarray,
    relatives: Mapping[int, np.ndarray],
    desired_positions: np.ndarray,
    models: MeasurementModels,
) -> Tuple[EstimatorState, float]:
    """One step of the resilient estimator.

    Args:
        state (EstimatorState): estimate at k-1
        velocity (np.ndarray): measured velocity at k
        gps (np.ndarray): delivered positioning signal at k
        relatives (Mapping[int, np.ndarray]): s_ij = x_j - x_i per neighbor j
        desired_positions (np.ndarray): desired positions of all agents at k,
            array (N, n)
        models (MeasurementModels): models

    Raises:
        EstimatorDegenerateError: an information matrix lost definiteness

    Returns:
        Tuple[EstimatorState, float]: estimate at k and beta
    """
    predicted = predict(state, velocity, models)
    tentative = update(predicted, gps, EstimatorMode.GPS, models)
    divergence = kl_divergence(predicted, tentative)
    beta = quality_measure(divergence, models.chi)
    if divergence < models.chi:
        return tentative.with_statistics(divergence, beta), beta

    current = predicted
    for j in sorted(relatives):
        current = update(
            current,
            relatives[j],
            EstimatorMode.RELATIVE,
            models,
            neighbor_desired=desired_positions[j],
        )
    mode = (
        EstimatorMode.RELATIVE if relatives else EstimatorMode.PREDICT_ONLY
    )
    return current.with_statistics(divergence, beta, mode), beta


class ResilientEstimator:
    """Resilient estimator bound to one agent.

    Args:
        agent (int): agent index
        initial_position (np.ndarray): known initial position x_i(0)
        models (MeasurementModels): models shared by the run
        initial_covariance (Optional[np.ndarray]): P(0), 1e-4 I when None
    """

    def __init__(
        self,
        agent: int,
        initial_position: np.ndarray,
        models: MeasurementModels,
        initial_covariance: Optional[np.ndarray] = None,
    ):
        if initial_covariance is None:
            initial_covariance = DEFAULT_INITIAL_VARIANCE * np.eye(
                models.dimension
            )
        self.__agent = agent
        self.__models = models
        try:
            self.__state = EstimatorState.from_estimate(
                np.array(initial_position, dtype=float), initial_covariance
            )
        except EstimatorDegenerateError as error:
            raise EstimatorDegenerateError(error.reason, agent) from error
        self.__rejections = 0

    @property
    def agent(self) -> int:
        return self.__agent

    @property
    def state(self) -> EstimatorState:
        return self.__state

    @property
    def rejections(self) -> int:
        """Number of steps where the positioning signal was rejected."""
        return self.__rejections

    def step(
        self,
        velocity: np.ndarray,
        gps: np.ndarray,
        relatives: Mapping[int, np.ndarray],
        desired_positions: np.ndarray,
        t: float = 0.0,
    ) -> EstimatorState:
        """Advances the estimate by one step.

        Args:
            velocity (np.ndarray): measured velocity
            gps (np.ndarray): delivered positioning signal
            relatives (Mapping[int, np.ndarray]): s_ij per neighbor j
            desired_positions (np.ndarray): desired positions (N, n)
            t (float): time, for the logs

        Raises:
            EstimatorDegenerateError: with the agent index

        Returns:
            EstimatorState: the new estimate
        """
        previous_mode = self.__state.mode
        try:
            state, _ = resilient_step(
                self.__state,
                velocity,
                gps,
                relatives,
                desired_positions,
                self.__models,
            )
        except EstimatorDegenerateError as error:
            raise EstimatorDegenerateError(error.reason, self.__agent) from error
        if state.mode is not EstimatorMode.GPS:
            self.__rejections += 1
            if previous_mode in (EstimatorMode.GPS, EstimatorMode.INITIAL):
                logger.debug(
                    f"agent {self.__agent} rejects its positioning at "
                    f"t={t:.2f}s (D_KL={state.kl_divergence:.3g}), "
                    f"mode {state.mode.value}"
                )
            if (
                state.mode is EstimatorMode.PREDICT_ONLY
                and previous_mode is not EstimatorMode.PREDICT_ONLY
            ):
                logger.warning(
                    f"agent {self.__agent} has no neighbor, prediction only"
                )
        elif previous_mode not in (EstimatorMode.GPS, EstimatorMode.INITIAL):
            logger.debug(
                f"agent {self.__agent} accepts its positioning again at t={t:.2f}s"
            )
        self.__state = state
        return state
