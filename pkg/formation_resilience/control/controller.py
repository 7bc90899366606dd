# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    controller

Description:
    Time-varying formation tracking control law of agent i::

        u_i = hdd_i - sigma_i (v_i - hd_i) - kappa_g,i f_i^g - kappa_f f_i^l
        f_i^l = sum_j w_ji (rdot_ji - hd_ji) + sigma_i sum_j w_ji (r_ji - h_ji)
        f_i^g = (v_i - hd_i) + sigma_i (x_i^used - h_i)

    where x_i^used is the positioning source of the run (raw positioning,
    possibly attacked, or the resilient estimate). The module also computes
    the tracking errors, the composite error xi_i and its Lyapunov value.

Classes:
    PositioningMode
    ControllerGains
    TrackingErrors

Author:
    formation-resilience developers
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..dynamics import Measurements
from ..dynamics import SwarmState
from ..exception import ConfigurationError
from ..network import SensoryGraph
from ..trajectory import DesiredStates
from ..utils import DocEnum

logger = logging.getLogger(__name__)


class PositioningMode(DocEnum):
    RAW = (
        "raw",
        "The delivered positioning signal, attacked or not, feeds the controller",
    )
    ESTIMATOR = (
        "estimator",
        "The resilient estimate feeds the controller",
    )


@dataclass(frozen=True, eq=False)
class ControllerGains:
    """Nominal gains of the N agents.

    Attributes:
        kappa_f (float): local tracking gain, > 0 (0 allowed for global-only runs)
        kappa_g (np.ndarray): global tracking gains (N,), >= 0
        sigma_f (np.ndarray): shaping matrices (N, n, n), positive definite
        kappa_g_lower (np.ndarray): projection lower bounds (N,)
        kappa_g_upper (np.ndarray): projection upper bounds (N,)
    """

    kappa_f: float
    kappa_g: np.ndarray
    sigma_f: np.ndarray
    kappa_g_lower: np.ndarray
    kappa_g_upper: np.ndarray

    def __post_init__(self):
        if self.kappa_f < 0:
            raise ConfigurationError("kappa_f must be >= 0", "gains.kappa_f")
        for name in ("kappa_g", "kappa_g_lower", "kappa_g_upper"):
            values = np.asarray(getattr(self, name), dtype=float)
            values.setflags(write=False)
            object.__setattr__(self, name, values)
        sigma_f = np.asarray(self.sigma_f, dtype=float)
        sigma_f.setflags(write=False)
        object.__setattr__(self, "sigma_f", sigma_f)
        if np.any(self.kappa_g_lower < 0):
            raise ConfigurationError(
                "kappa_g_lower must be >= 0", "gains.kappa_g_lower"
            )
        if np.any(self.kappa_g_lower > self.kappa_g) or np.any(
            self.kappa_g > self.kappa_g_upper
        ):
            raise ConfigurationError(
                "kappa_g must lie within [kappa_g_lower, kappa_g_upper]",
                "gains.kappa_g",
            )
        if not np.allclose(sigma_f, np.swapaxes(sigma_f, 1, 2)):
            raise ConfigurationError(
                "sigma_f must be symmetric", "gains.sigma_f"
            )
        if np.any(np.linalg.eigvalsh(sigma_f) <= 0):
            raise ConfigurationError(
                "sigma_f must be positive definite", "gains.sigma_f"
            )

    @classmethod
    def uniform(
        cls,
        agent_count: int,
        dimension: int,
        kappa_f: float,
        kappa_g: float,
        sigma_f: float = 1.0,
        kappa_g_lower: float = 0.0,
        kappa_g_upper: Optional[float] = None,
    ) -> "ControllerGains":
        """Same gains for every agent, sigma_f = sigma_f * I."""
        upper = kappa_g if kappa_g_upper is None else kappa_g_upper
        return cls(
            kappa_f=kappa_f,
            kappa_g=np.full(agent_count, kappa_g, dtype=float),
            sigma_f=np.tile(sigma_f * np.eye(dimension), (agent_count, 1, 1)),
            kappa_g_lower=np.full(agent_count, kappa_g_lower, dtype=float),
            kappa_g_upper=np.full(agent_count, upper, dtype=float),
        )

    @property
    def agent_count(self) -> int:
        return self.kappa_g.size


@dataclass(frozen=True, eq=False)
class TrackingErrors:
    """Ground-truth tracking errors of all agents, arrays (N, n).

    Attributes:
        global_error: x_i - h_i^d
        velocity_error: v_i - hd_i^d
        local_error: e_i = sum_j w_ji (x~_i - x~_j)
        composite: xi_i = velocity_error + kappa_g,i x~_i + kappa_f e_i
    """

    global_error: np.ndarray
    velocity_error: np.ndarray
    local_error: np.ndarray
    composite: np.ndarray


def tracking_errors(
    state: SwarmState,
    desired: DesiredStates,
    graph: SensoryGraph,
    gains: ControllerGains,
    kappa_g: Optional[np.ndarray] = None,
) -> TrackingErrors:
    """Tracking errors of all agents from the ground truth.

    Args:
        state (SwarmState): ground truth
        desired (DesiredStates): plan at the same time
        graph (SensoryGraph): sensory topology
        gains (ControllerGains): gains
        kappa_g (Optional[np.ndarray]): current global gains, nominal when None

    Returns:
        TrackingErrors: errors of every agent
    """
    kappa_g = gains.kappa_g if kappa_g is None else kappa_g
    global_error = state.positions - desired.position
    velocity_error = state.velocities - desired.velocity
    local_error = graph.laplacian @ global_error
    composite = (
        velocity_error
        + kappa_g[:, None] * global_error
        + gains.kappa_f * local_error
    )
    return TrackingErrors(global_error, velocity_error, local_error, composite)


def lyapunov_value(composite: np.ndarray, sigma_f: np.ndarray) -> float:
    """V_i = 1/2 xi_i^T sigma_i^-1 xi_i."""
    return 0.5 * float(composite @ np.linalg.solve(sigma_f, composite))


def local_term(
    measurements: Measurements,
    desired: DesiredStates,
    graph: SensoryGraph,
    gains: ControllerGains,
    i: int,
) -> np.ndarray:
    """Local formation tracking command f_i^l.

    Args:
        measurements (Measurements): measurements of agent i
        desired (DesiredStates): plan at the current time
        graph (SensoryGraph): sensory topology
        gains (ControllerGains): gains
        i (int): agent index

    Raises:
        ConfigurationError: a neighbor measurement is missing

    Returns:
        np.ndarray: f_i^l
    """
    velocity_sum = np.zeros(desired.position.shape[1])
    position_sum = np.zeros_like(velocity_sum)
    for j in graph.neighbors(i):
        try:
            displacement = measurements.relative_displacements[j]
            relative_velocity = measurements.relative_velocities[j]
        except KeyError as error:
            raise ConfigurationError(
                f"agent {i} has no measurement of neighbor {j}"
            ) from error
        weight = graph.weights[j, i]
        desired_displacement, desired_relative_velocity = desired.displacement(
            i, j
        )
        velocity_sum += weight * (relative_velocity - desired_relative_velocity)
        position_sum += weight * (displacement - desired_displacement)
    return velocity_sum + gains.sigma_f[i] @ position_sum


def global_term(
    velocity: np.ndarray,
    positioning: np.ndarray,
    desired: DesiredStates,
    gains: ControllerGains,
    i: int,
) -> np.ndarray:
    """Global formation tracking command f_i^g.

    Args:
        velocity (np.ndarray): measured velocity of agent i
        positioning (np.ndarray): resolved positioning source x_i^used
        desired (DesiredStates): plan at the current time
        gains (ControllerGains): gains
        i (int): agent index

    Returns:
        np.ndarray: f_i^g
    """
    return (velocity - desired.velocity[i]) + gains.sigma_f[i] @ (
        positioning - desired.position[i]
    )


def control_input(
    i: int,
    measurements: Measurements,
    positioning: np.ndarray,
    desired: DesiredStates,
    graph: SensoryGraph,
    gains: ControllerGains,
    kappa_g: Optional[float] = None,
) -> np.ndarray:
    """Acceleration command u_i.

    Args:
        i (int): agent index
        measurements (Measurements): measurements of agent i
        positioning (np.ndarray): resolved positioning source x_i^used
        desired (DesiredStates): plan at the current time
        graph (SensoryGraph): sensory topology
        gains (ControllerGains): gains
        kappa_g (Optional[float]): current global gain, nominal when None

    Returns:
        np.ndarray: u_i
    """
    kappa_g = float(gains.kappa_g[i]) if kappa_g is None else kappa_g
    velocity_error = measurements.velocity - desired.velocity[i]
    command = desired.acceleration[i] - gains.sigma_f[i] @ velocity_error
    if kappa_g != 0.0:
        command = command - kappa_g * global_term(
            measurements.velocity, positioning, desired, gains, i
        )
    if gains.kappa_f != 0.0:
        command = command - gains.kappa_f * local_term(
            measurements, desired, graph, gains, i
        )
    return command


def stacked_error_matrix(
    graph: SensoryGraph, kappa_g: np.ndarray, kappa_f: float
) -> np.ndarray:
    """-(D_kappa_g + kappa_f L), the stacked error dynamics without attacks.

    Args:
        graph (SensoryGraph): sensory topology
        kappa_g (np.ndarray): global gains (N,)
        kappa_f (float): local gain

    Returns:
        np.ndarray: N x N matrix, Hurwitz for a connected graph and kappa_g > 0
    """
    return -(np.diag(np.asarray(kappa_g, dtype=float)) + kappa_f * graph.laplacian)
