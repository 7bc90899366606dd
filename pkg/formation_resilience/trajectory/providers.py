# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    providers

Description:
    Global trajectories h^d(t) of the formation center with their analytic
    first and second time derivatives.

Classes:
    TrajectoryKind
    TrajectoryProvider
    ConstantTrajectory
    LemniscateTrajectory
    SinusoidTerm
    SinusoidSum

Author:
    formation-resilience developers

.. uml::

    class TrajectoryProvider {
        +int dimension
        +evaluate(float t) Tuple
    }
    TrajectoryProvider <|-- ConstantTrajectory
    TrajectoryProvider <|-- LemniscateTrajectory
    TrajectoryProvider <|-- SinusoidSum
"""
import logging
from abc import ABC
from abc import abstractmethod
from dataclasses import dataclass
from dataclasses import field
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from ..exception import ConfigurationError
from ..utils import DocEnum

logger = logging.getLogger(__name__)

Kinematics = Tuple[np.ndarray, np.ndarray, np.ndarray]


class TrajectoryKind(DocEnum):
    CONSTANT = ("constant", "Fixed point, zero velocity and acceleration")
    LEMNISCATE = (
        "lemniscate",
        "Figure-eight h = [ax sin(wt), ay cos(wt/2)] / (cos(wt) - 3), "
        "optional vertical cosine",
    )
    SINUSOIDS = ("sinusoids", "Bias plus a sum of sinusoids")


class TrajectoryProvider(ABC):
    """A twice differentiable trajectory in R^n."""

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Dimension n of the trajectory."""

    @abstractmethod
    def evaluate(self, t: float) -> Kinematics:
        """Position, velocity and acceleration at time t.

        Args:
            t (float): time in seconds

        Returns:
            Kinematics: three vectors of size n
        """


class ConstantTrajectory(TrajectoryProvider):
    """Stationary point.

    Args:
        position (Sequence[float]): the point
    """

    def __init__(self, position: Sequence[float]):
        self.__position = np.array(position, dtype=float)
        self.__position.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.__position.size

    def evaluate(self, t: float) -> Kinematics:
        zeros = np.zeros(self.dimension)
        return self.__position.copy(), zeros, zeros.copy()


def _quotient(
    num: Tuple[float, float, float], den: Tuple[float, float, float]
) -> Tuple[float, float, float]:
    """Value and two derivatives of num/den from theirs."""
    n0, n1, n2 = num
    d0, d1, d2 = den
    value = n0 / d0
    first = (n1 * d0 - n0 * d1) / d0**2
    second = (
        n2 / d0 - 2 * n1 * d1 / d0**2 - n0 * d2 / d0**2 + 2 * n0 * d1**2 / d0**3
    )
    return value, first, second


class LemniscateTrajectory(TrajectoryProvider):
    """Figure-eight trajectory.

    With theta = omega * t::

        x = amplitude_x * sin(theta) / (cos(theta) - 3)
        y = amplitude_y * cos(theta / 2) / (cos(theta) - 3)
        z = z_amplitude * cos(theta) + z_offset          (3-D only)

    Args:
        amplitude_x (float): numerator gain on the first axis
        amplitude_y (float): numerator gain on the second axis
        omega (float): angular rate in rad/s
        z_amplitude (Optional[float]): vertical amplitude, 3-D when set
        z_offset (float): vertical offset
    """

    def __init__(
        self,
        amplitude_x: float,
        amplitude_y: float,
        omega: float,
        z_amplitude: Optional[float] = None,
        z_offset: float = 0.0,
    ):
        if omega <= 0:
            raise ConfigurationError(
                "omega must be > 0", "formation.trajectory.omega"
            )
        self.__amplitude_x = amplitude_x
        self.__amplitude_y = amplitude_y
        self.__omega = omega
        self.__z_amplitude = z_amplitude
        self.__z_offset = z_offset

    @property
    def dimension(self) -> int:
        return 2 if self.__z_amplitude is None else 3

    def evaluate(self, t: float) -> Kinematics:
        omega = self.__omega
        theta = omega * t
        sin, cos = np.sin(theta), np.cos(theta)
        sin_half, cos_half = np.sin(theta / 2), np.cos(theta / 2)
        denominator = (cos - 3.0, -sin, -cos)
        x = _quotient((sin, cos, -sin), denominator)
        y = _quotient(
            (cos_half, -0.5 * sin_half, -0.25 * cos_half), denominator
        )
        position = [self.__amplitude_x * x[0], self.__amplitude_y * y[0]]
        velocity = [
            self.__amplitude_x * x[1] * omega,
            self.__amplitude_y * y[1] * omega,
        ]
        acceleration = [
            self.__amplitude_x * x[2] * omega**2,
            self.__amplitude_y * y[2] * omega**2,
        ]
        if self.__z_amplitude is not None:
            position.append(self.__z_amplitude * cos + self.__z_offset)
            velocity.append(-self.__z_amplitude * sin * omega)
            acceleration.append(-self.__z_amplitude * cos * omega**2)
        return np.array(position), np.array(velocity), np.array(acceleration)


@dataclass(frozen=True)
class SinusoidTerm:
    """amplitude * sin(omega * t + phase)."""

    amplitude: Tuple[float, ...]
    omega: float
    phase: float = 0.0


@dataclass(frozen=True, eq=False)
class SinusoidSum(TrajectoryProvider):
    """bias + sum of sinusoid terms, used for trajectories and attack biases."""

    bias: Tuple[float, ...]
    terms: Tuple[SinusoidTerm, ...] = ()
    _amplitudes: np.ndarray = field(init=False, repr=False)
    _omegas: np.ndarray = field(init=False, repr=False)
    _phases: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for term in self.terms:
            if len(term.amplitude) != len(self.bias):
                raise ConfigurationError(
                    f"sinusoid amplitude {term.amplitude} does not match "
                    f"dimension {len(self.bias)}"
                )
        n = len(self.bias)
        object.__setattr__(
            self,
            "_amplitudes",
            np.array([t.amplitude for t in self.terms], dtype=float).reshape(
                -1, n
            ),
        )
        object.__setattr__(
            self, "_omegas", np.array([t.omega for t in self.terms], dtype=float)
        )
        object.__setattr__(
            self, "_phases", np.array([t.phase for t in self.terms], dtype=float)
        )

    @classmethod
    def constant(cls, vector: Sequence[float]) -> "SinusoidSum":
        return cls(bias=tuple(float(v) for v in vector))

    @property
    def dimension(self) -> int:
        return len(self.bias)

    @property
    def is_constant(self) -> bool:
        return len(self.terms) == 0

    def value(self, t: float) -> np.ndarray:
        """Position only."""
        arguments = self._omegas * t + self._phases
        return np.asarray(self.bias, dtype=float) + np.sin(arguments) @ self._amplitudes

    def evaluate(self, t: float) -> Kinematics:
        arguments = self._omegas * t + self._phases
        sin, cos = np.sin(arguments), np.cos(arguments)
        position = np.asarray(self.bias, dtype=float) + sin @ self._amplitudes
        velocity = (cos * self._omegas) @ self._amplitudes
        acceleration = (-sin * self._omegas**2) @ self._amplitudes
        return position, velocity, acceleration
