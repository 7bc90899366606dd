# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    gain_tuning

Description:
    Resilient operation by tuning the global tracking gains. In the `beta`
    mode the gain follows the quality of the positioning signal::

        kappa_g' = gamma tanh(sigma_beta (beta - chi_beta))

    In the `error` mode it follows the tracking errors instead::

        kappa_g' = gamma tanh(||ebar_i|| - alpha ||x~_i||)

    Both laws are integrated with explicit Euler and projected onto the
    gain bounds.

Classes:
    TuningMode
    TuningParams
    GainTuner

Author:
    formation-resilience developers
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence
from typing import Tuple

import numpy as np

from ..exception import ConfigurationError
from ..utils import DocEnum
from .controller import ControllerGains

logger = logging.getLogger(__name__)

_EVENT_TOLERANCE = 1e-9


class TuningMode(DocEnum):
    BETA = ("beta", "Gain driven by the positioning quality measure")
    ERROR = ("error", "Gain driven by the local and global tracking errors")


@dataclass(frozen=True)
class TuningParams:
    """Tuning parameters of one agent.

    Attributes:
        gamma (float): tuning rate, > 0
        sigma_beta (float): sharpness, > 0
        chi_beta (float): trigger threshold in (0, 1]
        alpha (float): weight of the global error in the error mode, > 0
    """

    gamma: float = 1.0
    sigma_beta: float = 3.0
    chi_beta: float = 0.5
    alpha: float = 2.0

    def __post_init__(self):
        for name in ("gamma", "sigma_beta", "alpha"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be > 0", f"tuning.{name}")
        if not 0 < self.chi_beta <= 1:
            raise ConfigurationError(
                "chi_beta must lie in (0, 1]", "tuning.chi_beta"
            )


def _project(value: float, bounds: Tuple[float, float]) -> float:
    return min(max(value, bounds[0]), bounds[1])


def tune_gain(
    kappa_g: float,
    beta: float,
    params: TuningParams,
    dt: float,
    bounds: Tuple[float, float],
) -> float:
    """One Euler step of the quality-driven tuning law, then projection.

    Args:
        kappa_g (float): current gain
        beta (float): quality measure in [0, 1]
        params (TuningParams): tuning parameters
        dt (float): time step
        bounds (Tuple[float, float]): projection interval

    Returns:
        float: the updated gain
    """
    rate = params.gamma * math.tanh(params.sigma_beta * (beta - params.chi_beta))
    return _project(kappa_g + dt * rate, bounds)


def tune_gain_from_errors(
    kappa_g: float,
    local_error: float,
    global_error: float,
    params: TuningParams,
    dt: float,
    bounds: Tuple[float, float],
) -> float:
    """One Euler step of the error-driven tuning law, then projection.

    Args:
        kappa_g (float): current gain
        local_error (float): norm of the mean local error of the agent
        global_error (float): norm of the global error seen by the agent
        params (TuningParams): tuning parameters
        dt (float): time step
        bounds (Tuple[float, float]): projection interval

    Returns:
        float: the updated gain
    """
    rate = params.gamma * math.tanh(local_error - params.alpha * global_error)
    return _project(kappa_g + dt * rate, bounds)


class GainTuner:
    """Current global gains of a run.

    Args:
        gains (ControllerGains): nominal gains, starting values and bounds
        params (Sequence[TuningParams]): parameters per agent
        mode (TuningMode): tuning law
        enabled (bool): False keeps the nominal gains
        activation_time (float): tuning starts at this time
    """

    def __init__(
        self,
        gains: ControllerGains,
        params: Sequence[TuningParams],
        mode: TuningMode = TuningMode.BETA,
        enabled: bool = False,
        activation_time: float = 0.0,
    ):
        if len(params) != gains.agent_count:
            raise ConfigurationError(
                f"expected {gains.agent_count} tuning parameter sets", "tuning"
            )
        self.__kappa_g = np.array(gains.kappa_g, dtype=float)
        self.__bounds = list(zip(gains.kappa_g_lower, gains.kappa_g_upper))
        self.__params = tuple(params)
        self.__mode = mode
        self.__enabled = enabled
        self.__activation_time = activation_time

    @property
    def kappa_g(self) -> np.ndarray:
        """Current gains, read-only view."""
        view = self.__kappa_g.view()
        view.setflags(write=False)
        return view

    @property
    def mode(self) -> TuningMode:
        return self.__mode

    @property
    def enabled(self) -> bool:
        return self.__enabled

    def is_active(self, t: float) -> bool:
        return self.__enabled and t >= self.__activation_time - _EVENT_TOLERANCE

    def update(
        self,
        t: float,
        dt: float,
        betas: np.ndarray,
        local_errors: np.ndarray,
        global_errors: np.ndarray,
    ) -> np.ndarray:
        """Tunes every gain once if tuning is active at t.

        Args:
            t (float): current time
            dt (float): time step
            betas (np.ndarray): quality measures (N,)
            local_errors (np.ndarray): mean local error norms (N,)
            global_errors (np.ndarray): global error norms seen by the agents (N,)

        Returns:
            np.ndarray: the gains to use at this step
        """
        if not self.is_active(t):
            return self.kappa_g
        for i, (params, bounds) in enumerate(zip(self.__params, self.__bounds)):
            previous = self.__kappa_g[i]
            if self.__mode is TuningMode.BETA:
                updated = tune_gain(previous, betas[i], params, dt, bounds)
            else:
                updated = tune_gain_from_errors(
                    previous,
                    local_errors[i],
                    global_errors[i],
                    params,
                    dt,
                    bounds,
                )
            if updated != previous and updated in bounds:
                logger.debug(f"kappa_g of agent {i} saturated at {updated:.3f}")
            self.__kappa_g[i] = updated
        return self.kappa_g
