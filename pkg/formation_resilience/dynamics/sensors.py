# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    sensors

Description:
    Measurements available on board each agent: relative displacement and
    relative velocity to every neighbor of the sensory graph, own velocity
    and the global positioning signal before any attack. Gaussian noise is
    optional and drawn in a fixed order so that a seed reproduces a run.

Classes:
    NoiseConfig
    Measurements

Author:
    formation-resilience developers
"""
import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import List
from typing import Optional

import numpy as np

from ..exception import ConfigurationError
from ..network import SensoryGraph
from .integrator import SwarmState

logger = logging.getLogger(__name__)

_PSD_TOLERANCE = 1e-12


def _square_root(covariance: np.ndarray, name: str) -> np.ndarray:
    """Factor S with S S^T = covariance for a PSD covariance."""
    if not np.allclose(covariance, covariance.T, atol=1e-15, rtol=0):
        raise ConfigurationError("covariance must be symmetric", f"noise.{name}")
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    if eigenvalues.min(initial=0.0) < -_PSD_TOLERANCE:
        raise ConfigurationError(
            "covariance must be positive semidefinite", f"noise.{name}"
        )
    return eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))


@dataclass(frozen=True, eq=False)
class NoiseConfig:
    """Covariances of the measurement noises, n x n PSD matrices.

    The velocity channel plays the role of the process noise of the
    estimator motion model.
    """

    velocity_cov: np.ndarray
    gps_cov: np.ndarray
    relative_cov: np.ndarray
    relative_velocity_cov: np.ndarray
    seed: int = 0
    _factors: Dict[str, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        factors = {}
        for name in (
            "velocity_cov",
            "gps_cov",
            "relative_cov",
            "relative_velocity_cov",
        ):
            matrix = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, matrix)
            factors[name] = _square_root(matrix, name)
        object.__setattr__(self, "_factors", factors)

    @classmethod
    def noiseless(cls, dimension: int, seed: int = 0) -> "NoiseConfig":
        zeros = np.zeros((dimension, dimension))
        return cls(zeros, zeros, zeros, zeros, seed)

    @property
    def is_noiseless(self) -> bool:
        return all(not np.any(factor) for factor in self._factors.values())

    def factor(self, name: str) -> np.ndarray:
        """Square root factor of a covariance."""
        return self._factors[name]

    def rng(self) -> np.random.Generator:
        """Fresh random generator of a run."""
        return np.random.default_rng(self.seed)


@dataclass(frozen=True, eq=False)
class Measurements:
    """Measurements of agent i at one step.

    relative_displacements[j] is r_ji = x_i - x_j and relative_velocities[j]
    its derivative, for j in the neighbors of i.
    """

    agent: int
    relative_displacements: Dict[int, np.ndarray]
    relative_velocities: Dict[int, np.ndarray]
    velocity: np.ndarray
    global_position: np.ndarray

    def distance(self, j: int) -> float:
        """d_ji = ||r_ji||."""
        return float(np.linalg.norm(self.relative_displacements[j]))


def _sample(
    rng: Optional[np.random.Generator],
    factor: np.ndarray,
    count: int,
) -> Optional[np.ndarray]:
    if rng is None:
        return None
    return rng.standard_normal((count, factor.shape[0])) @ factor.T


def measure(
    state: SwarmState,
    graph: SensoryGraph,
    noise: NoiseConfig,
    rng: Optional[np.random.Generator],
) -> List[Measurements]:
    """Measurements of every agent.

    Draw order per call: velocity noise of all agents, positioning noise of
    all agents, then relative displacement and relative velocity noise of
    every directed edge in ascending (i, j). Nothing is drawn when the noise
    is zero everywhere or rng is None.

    Args:
        state (SwarmState): ground truth
        graph (SensoryGraph): sensory topology
        noise (NoiseConfig): noise covariances
        rng (Optional[np.random.Generator]): random generator of the run

    Returns:
        List[Measurements]: one entry per agent
    """
    positions, velocities = state.positions, state.velocities
    count = state.agent_count
    if noise.is_noiseless:
        rng = None
    directed = [(i, j) for i in range(count) for j in graph.neighbors(i)]
    velocity_noise = _sample(rng, noise.factor("velocity_cov"), count)
    gps_noise = _sample(rng, noise.factor("gps_cov"), count)
    relative_noise = _sample(rng, noise.factor("relative_cov"), len(directed))
    relative_velocity_noise = _sample(
        rng, noise.factor("relative_velocity_cov"), len(directed)
    )

    displacements: List[Dict[int, np.ndarray]] = [{} for _ in range(count)]
    relative_velocities: List[Dict[int, np.ndarray]] = [
        {} for _ in range(count)
    ]
    for edge, (i, j) in enumerate(directed):
        displacement = positions[i] - positions[j]
        relative_velocity = velocities[i] - velocities[j]
        if relative_noise is not None and relative_velocity_noise is not None:
            displacement = displacement + relative_noise[edge]
            relative_velocity = (
                relative_velocity + relative_velocity_noise[edge]
            )
        displacements[i][j] = displacement
        relative_velocities[i][j] = relative_velocity

    measured_velocities = velocities.copy()
    measured_positions = positions.copy()
    if velocity_noise is not None and gps_noise is not None:
        measured_velocities += velocity_noise
        measured_positions += gps_noise
    return [
        Measurements(
            agent=i,
            relative_displacements=displacements[i],
            relative_velocities=relative_velocities[i],
            velocity=measured_velocities[i],
            global_position=measured_positions[i],
        )
        for i in range(count)
    ]
