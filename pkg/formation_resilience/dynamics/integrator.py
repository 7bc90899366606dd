# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    integrator

Description:
    Ground-truth double integrator dynamics x_i'' = u_i of all agents,
    advanced with the classical fourth-order Runge-Kutta scheme. Inputs are
    held constant over a step.

Classes:
    AgentState
    SwarmState

Author:
    formation-resilience developers
"""
import logging
from dataclasses import dataclass
from typing import Iterator
from typing import Sequence

import numpy as np

from ..exception import SimulationDivergedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AgentState:
    """Position (m) and velocity (m/s) of one agent."""

    position: np.ndarray
    velocity: np.ndarray


@dataclass(frozen=True, eq=False)
class SwarmState:
    """Stacked states of the N agents, arrays (N, n)."""

    positions: np.ndarray
    velocities: np.ndarray

    def __post_init__(self):
        if self.positions.shape != self.velocities.shape:
            raise ValueError(
                f"positions {self.positions.shape} and velocities "
                f"{self.velocities.shape} do not match"
            )

    @classmethod
    def from_agents(cls, states: Sequence[AgentState]) -> "SwarmState":
        return cls(
            positions=np.array([s.position for s in states], dtype=float),
            velocities=np.array([s.velocity for s in states], dtype=float),
        )

    @property
    def agent_count(self) -> int:
        return self.positions.shape[0]

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    def agent(self, index: int) -> AgentState:
        return AgentState(
            position=self.positions[index], velocity=self.velocities[index]
        )

    def __iter__(self) -> Iterator[AgentState]:
        for index in range(self.agent_count):
            yield self.agent(index)


def check_finite(values: np.ndarray, time: float, what: str):
    """Raises when a row of values holds a non-finite component.

    Args:
        values (np.ndarray): array (N, n)
        time (float): simulation time
        what (str): name of the checked quantity

    Raises:
        SimulationDivergedError: the first offending agent
    """
    finite = np.isfinite(values).all(axis=1)
    if not finite.all():
        agent = int(np.flatnonzero(~finite)[0])
        raise SimulationDivergedError(agent, time, f"non-finite {what}")


def _derivative(velocities: np.ndarray, inputs: np.ndarray):
    return velocities, inputs


def step(
    state: SwarmState, inputs: np.ndarray, dt: float, time: float = 0.0
) -> SwarmState:
    """Advances every agent by one RK4 step.

    Args:
        state (SwarmState): states at time
        inputs (np.ndarray): accelerations u_i, array (N, n)
        dt (float): time step in seconds
        time (float): current time, reported on divergence

    Raises:
        ValueError: dt is not positive
        SimulationDivergedError: non-finite state or input

    Returns:
        SwarmState: states at time + dt
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    inputs = np.asarray(inputs, dtype=float)
    check_finite(state.positions, time, "position")
    check_finite(state.velocities, time, "velocity")
    check_finite(inputs, time, "input")

    positions, velocities = state.positions, state.velocities
    k1_x, k1_v = _derivative(velocities, inputs)
    k2_x, k2_v = _derivative(velocities + 0.5 * dt * k1_v, inputs)
    k3_x, k3_v = _derivative(velocities + 0.5 * dt * k2_v, inputs)
    k4_x, k4_v = _derivative(velocities + dt * k3_v, inputs)
    new_positions = positions + dt / 6.0 * (k1_x + 2 * k2_x + 2 * k3_x + k4_x)
    new_velocities = velocities + dt / 6.0 * (
        k1_v + 2 * k2_v + 2 * k3_v + k4_v
    )
    check_finite(new_positions, time + dt, "position")
    check_finite(new_velocities, time + dt, "velocity")
    return SwarmState(positions=new_positions, velocities=new_velocities)
