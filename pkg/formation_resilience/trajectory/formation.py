# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    formation

Description:
    Desired time-varying formation. Each agent tracks
    h_i^d(t) = h^d(t) + hbar_i^d(t) where h^d is the global trajectory and
    hbar_i^d the offset of the agent. Offsets move between shape keyframes
    with a quintic smoothstep, so that every signal is C2, and may carry
    per-agent oscillations.

Classes:
    KeyframeSchedule
    AgentOscillations
    DesiredStates
    FormationPlan

Author:
    formation-resilience developers
"""
import logging
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from ..exception import ConfigurationError
from .providers import TrajectoryProvider

logger = logging.getLogger(__name__)

DEFAULT_TRANSITION_WINDOW = 5.0


def smoothstep(tau: float) -> Tuple[float, float, float]:
    """Quintic smoothstep 10 tau^3 - 15 tau^4 + 6 tau^5 and its derivatives.

    Args:
        tau (float): normalized time, clipped to [0, 1]

    Returns:
        Tuple[float, float, float]: value, first and second derivative in tau
    """
    tau = min(max(tau, 0.0), 1.0)
    value = tau**3 * (10.0 - 15.0 * tau + 6.0 * tau**2)
    first = 30.0 * tau**2 * (1.0 - tau) ** 2
    second = 60.0 * tau * (1.0 - tau) * (1.0 - 2.0 * tau)
    return value, first, second


class KeyframeSchedule:
    """Piecewise formation shapes.

    The offsets of keyframe k are reached exactly at times[k]. The blend
    from keyframe k-1 starts transition_window seconds before, or at
    times[k-1] when the keyframes are closer than the window.

    Args:
        times (Sequence[float]): strictly increasing keyframe times
        offsets (np.ndarray): array (K, N, n) of offsets
        transition_window (float): blending duration in seconds
    """

    def __init__(
        self,
        times: Sequence[float],
        offsets: np.ndarray,
        transition_window: float = DEFAULT_TRANSITION_WINDOW,
    ):
        times_array = np.array(times, dtype=float)
        offsets = np.array(offsets, dtype=float)
        if times_array.ndim != 1 or times_array.size == 0:
            raise ConfigurationError(
                "at least one keyframe is required", "formation.keyframes"
            )
        if np.any(np.diff(times_array) <= 0):
            raise ConfigurationError(
                "keyframe times must be strictly increasing",
                "formation.keyframes",
            )
        if offsets.ndim != 3 or offsets.shape[0] != times_array.size:
            raise ConfigurationError(
                f"offsets must be (keyframes, agents, dimension), got {offsets.shape}",
                "formation.keyframes",
            )
        if transition_window <= 0:
            raise ConfigurationError(
                "transition window must be > 0", "formation.transition_window"
            )
        self.__times = times_array
        self.__offsets = offsets
        self.__starts = np.empty_like(times_array)
        self.__starts[0] = times_array[0]
        self.__starts[1:] = np.maximum(
            times_array[1:] - transition_window, times_array[:-1]
        )

    @property
    def times(self) -> np.ndarray:
        return self.__times.copy()

    @property
    def agent_count(self) -> int:
        return self.__offsets.shape[1]

    @property
    def dimension(self) -> int:
        return self.__offsets.shape[2]

    def evaluate(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Offsets of all agents with their derivatives, arrays (N, n)."""
        index = int(np.searchsorted(self.__times, t, side="left"))
        zeros = np.zeros(self.__offsets.shape[1:])
        if index == 0:
            return self.__offsets[0].copy(), zeros, zeros.copy()
        if index >= self.__times.size:
            return self.__offsets[-1].copy(), zeros, zeros.copy()
        start, end = self.__starts[index], self.__times[index]
        if t == end:
            return self.__offsets[index].copy(), zeros, zeros.copy()
        previous = self.__offsets[index - 1]
        if t <= start:
            return previous.copy(), zeros, zeros.copy()
        duration = end - start
        value, first, second = smoothstep((t - start) / duration)
        jump = self.__offsets[index] - previous
        return (
            previous + value * jump,
            first / duration * jump,
            second / duration**2 * jump,
        )


class AgentOscillations:
    """Per-agent sinusoidal offsets.

    Term m of agent i reads amplitude_m * sin(omega_m t + phase_m + (i+1)
    phase_step_m), agents being numbered from one in the phase.

    Args:
        agent_count (int): number of agents N
        amplitudes (np.ndarray): array (M, n)
        omegas (Sequence[float]): angular rates (M,)
        phases (Sequence[float]): phases (M,)
        phase_steps (Sequence[float]): phase increments per agent (M,)
        masks (Optional[np.ndarray]): boolean (M, N), agents affected by a term
    """

    def __init__(
        self,
        agent_count: int,
        amplitudes: np.ndarray,
        omegas: Sequence[float],
        phases: Sequence[float],
        phase_steps: Sequence[float],
        masks: Optional[np.ndarray] = None,
    ):
        amplitudes = np.array(amplitudes, dtype=float)
        count = amplitudes.shape[0]
        if masks is None:
            masks = np.ones((count, agent_count), dtype=bool)
        agents = np.arange(1, agent_count + 1)
        # (N, M)
        self.__omegas = np.tile(np.asarray(omegas, dtype=float), (agent_count, 1))
        self.__phases = np.asarray(phases, dtype=float)[None, :] + np.outer(
            agents, np.asarray(phase_steps, dtype=float)
        )
        # (N, M, n)
        self.__amplitudes = (
            np.asarray(masks, dtype=float).T[:, :, None] * amplitudes[None, :, :]
        )

    def evaluate(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Oscillation offsets of all agents with their derivatives."""
        arguments = self.__omegas * t + self.__phases
        sin, cos = np.sin(arguments), np.cos(arguments)
        position = np.einsum("am,amn->an", sin, self.__amplitudes)
        velocity = np.einsum(
            "am,amn->an", cos * self.__omegas, self.__amplitudes
        )
        acceleration = np.einsum(
            "am,amn->an", -sin * self.__omegas**2, self.__amplitudes
        )
        return position, velocity, acceleration


@dataclass(frozen=True, eq=False)
class DesiredStates:
    """Snapshot of the formation plan at time t, arrays (N, n)."""

    time: float
    position: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray

    def displacement(self, i: int, j: int) -> Tuple[np.ndarray, np.ndarray]:
        """h_ji^d = h_i^d - h_j^d and its derivative."""
        return (
            self.position[i] - self.position[j],
            self.velocity[i] - self.velocity[j],
        )


class FormationPlan:
    """Global trajectory plus per-agent offsets.

    Args:
        trajectory (TrajectoryProvider): global trajectory h^d
        keyframes (KeyframeSchedule): shape offsets
        oscillations (Optional[AgentOscillations]): extra per-agent offsets

    Raises:
        ConfigurationError: dimensions do not match
    """

    def __init__(
        self,
        trajectory: TrajectoryProvider,
        keyframes: KeyframeSchedule,
        oscillations: Optional[AgentOscillations] = None,
    ):
        if trajectory.dimension != keyframes.dimension:
            raise ConfigurationError(
                f"trajectory dimension {trajectory.dimension} does not match "
                f"offsets dimension {keyframes.dimension}",
                "formation",
            )
        if trajectory.dimension not in (2, 3):
            raise ConfigurationError(
                "dimension must be 2 or 3", "simulation.dimension"
            )
        self.__trajectory = trajectory
        self.__keyframes = keyframes
        self.__oscillations = oscillations

    @property
    def dimension(self) -> int:
        return self.__trajectory.dimension

    @property
    def agent_count(self) -> int:
        return self.__keyframes.agent_count

    @property
    def trajectory(self) -> TrajectoryProvider:
        return self.__trajectory

    @property
    def keyframes(self) -> KeyframeSchedule:
        return self.__keyframes

    def snapshot(self, t: float) -> DesiredStates:
        """Desired states of every agent at time t.

        Args:
            t (float): time in seconds

        Returns:
            DesiredStates: h_i^d and its derivatives for all agents
        """
        center, center_dot, center_ddot = self.__trajectory.evaluate(t)
        offset, offset_dot, offset_ddot = self.__keyframes.evaluate(t)
        if self.__oscillations is not None:
            wave, wave_dot, wave_ddot = self.__oscillations.evaluate(t)
            offset = offset + wave
            offset_dot = offset_dot + wave_dot
            offset_ddot = offset_ddot + wave_ddot
        return DesiredStates(
            time=t,
            position=center + offset,
            velocity=center_dot + offset_dot,
            acceleration=center_ddot + offset_ddot,
        )

    def desired_state(
        self, agent: int, t: float
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Position, velocity and acceleration targets of one agent.

        Args:
            agent (int): agent index
            t (float): time in seconds

        Returns:
            Tuple[np.ndarray, np.ndarray, np.ndarray]: h_i^d and derivatives
        """
        if not 0 <= agent < self.agent_count:
            raise IndexError(f"agent {agent} out of range")
        states = self.snapshot(t)
        return (
            states.position[agent],
            states.velocity[agent],
            states.acceleration[agent],
        )

    def desired_displacement(
        self, i: int, j: int, t: float
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Desired relative displacement h_ji^d = h_i^d - h_j^d.

        Args:
            i (int): observing agent
            j (int): observed agent, different from i
            t (float): time in seconds

        Raises:
            ValueError: i equals j

        Returns:
            Tuple[np.ndarray, np.ndarray]: h_ji^d and its derivative
        """
        if i == j:
            raise ValueError("displacement of an agent with itself")
        return self.snapshot(t).displacement(i, j)
