# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    deception

Description:
    Deception attacks on the global positioning signal. Inside its active
    window [start, end) an attack delivers::

        additive :  x + Delta(t)
        hybrid   :  delta x + Delta(t)             (delta != 1)
        unstable :  delta x - c_a xi               (delta = 1 by default)

    xi is the composite tracking error of the target, computed by the
    simulator from the ground truth.

Classes:
    AttackMode
    AttackEffect
    AttackSpec
    AttackSchedule

Author:
    formation-resilience developers
"""
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import numpy as np

from ..exception import ConfigurationError
from ..trajectory import SinusoidSum
from ..utils import DocEnum

logger = logging.getLogger(__name__)

_EVENT_TOLERANCE = 1e-9


class AttackMode(DocEnum):
    NONE = ("none", "Truthful positioning")
    ADDITIVE = ("additive", "Bias added to the position, delta = 1")
    HYBRID = ("hybrid", "Scaled position plus a bias, delta != 1")
    UNSTABLE = (
        "unstable",
        "Position shifted against the composite error, delta x - c_a xi",
    )


class AttackEffect(DocEnum):
    NONE = ("none", "No effect on the closed loop")
    ULTIMATELY_BOUNDED = ("ultimately_bounded", "Errors stay bounded")
    BOUNDED_IF_STATE_BOUNDED = (
        "bounded_if_state_bounded",
        "Errors stay bounded while the trajectory is bounded",
    )
    UNSTABLE = ("unstable", "The Lyapunov function increases")


@dataclass(frozen=True, eq=False)
class AttackSpec:
    """Deception attack bound to one agent.

    Attributes:
        agent (int): target agent index
        mode (AttackMode): attack mode
        delta (float): multiplicative factor
        bias (Optional[SinusoidSum]): additive bias Delta(t), zero when None
        c_a (float): coefficient of the unstable attack
        start (float): first active time, inclusive
        end (float): end of the window, exclusive
    """

    agent: int
    mode: AttackMode
    delta: float = 1.0
    bias: Optional[SinusoidSum] = None
    c_a: float = 0.0
    start: float = 0.0
    end: float = math.inf
    _constant_bias: Optional[np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        if self.agent < 0:
            raise ConfigurationError("agent must be >= 0", "attacks.agent")
        if self.start < 0:
            raise ConfigurationError("start must be >= 0", "attacks.start")
        if not self.end > self.start:
            raise ConfigurationError("end must be > start", "attacks.end")
        if self.mode is AttackMode.ADDITIVE and self.delta != 1.0:
            raise ConfigurationError(
                "an additive attack has delta = 1", "attacks.delta"
            )
        if self.mode is AttackMode.HYBRID and self.delta == 1.0:
            raise ConfigurationError(
                "a hybrid attack has delta != 1", "attacks.delta"
            )
        constant = None
        if self.bias is not None and self.bias.is_constant:
            constant = np.asarray(self.bias.bias, dtype=float)
        object.__setattr__(self, "_constant_bias", constant)

    def is_active(self, t: float) -> bool:
        """True inside [start, end), event times snapped to the grid."""
        return (
            self.mode is not AttackMode.NONE
            and t >= self.start - _EVENT_TOLERANCE
            and t < self.end - _EVENT_TOLERANCE
        )

    def bias_at(self, t: float, dimension: int) -> np.ndarray:
        if self._constant_bias is not None:
            return self._constant_bias
        if self.bias is None:
            return np.zeros(dimension)
        return self.bias.value(t)


def apply_attack(
    spec: AttackSpec, x: np.ndarray, xi: np.ndarray, t: float
) -> np.ndarray:
    """Positioning signal delivered to the target agent.

    Args:
        spec (AttackSpec): the attack
        x (np.ndarray): truthful positioning of the agent
        xi (np.ndarray): composite tracking error of the agent
        t (float): time in seconds

    Returns:
        np.ndarray: the possibly compromised positioning
    """
    if not spec.is_active(t):
        return x
    match spec.mode:
        case AttackMode.ADDITIVE:
            return x + spec.bias_at(t, x.size)
        case AttackMode.HYBRID:
            return spec.delta * x + spec.bias_at(t, x.size)
        case AttackMode.UNSTABLE:
            return spec.delta * x - spec.c_a * xi
        case _:
            return x


def attack_effect(
    mode: AttackMode, kappa_g: float, c_a: float = 0.0, delta: float = 1.0
) -> AttackEffect:
    """Expected effect of an attack on the closed loop.

    For the unstable mode with delta = 1, dV/dt = (kappa_g c_a - 1) xi^T xi.

    Args:
        mode (AttackMode): attack mode
        kappa_g (float): global gain of the target
        c_a (float): unstable attack coefficient
        delta (float): multiplicative factor

    Returns:
        AttackEffect: the effect
    """
    match mode:
        case AttackMode.NONE:
            return AttackEffect.NONE
        case AttackMode.ADDITIVE:
            return AttackEffect.ULTIMATELY_BOUNDED
        case AttackMode.HYBRID:
            return AttackEffect.BOUNDED_IF_STATE_BOUNDED
        case _:
            if kappa_g * c_a > 1.0:
                return AttackEffect.UNSTABLE
            if delta == 1.0:
                return AttackEffect.ULTIMATELY_BOUNDED
            return AttackEffect.BOUNDED_IF_STATE_BOUNDED


class AttackSchedule:
    """All the attacks of a run.

    Args:
        specs (Sequence[AttackSpec]): attacks
        agent_count (int): number of agents

    Raises:
        ConfigurationError: unknown agent or overlapping windows on an agent
    """

    def __init__(self, specs: Sequence[AttackSpec], agent_count: int):
        by_agent: Dict[int, List[AttackSpec]] = {}
        for number, spec in enumerate(specs):
            if spec.agent >= agent_count:
                raise ConfigurationError(
                    f"agent {spec.agent} does not exist",
                    f"attacks[{number}].agent",
                )
            by_agent.setdefault(spec.agent, []).append(spec)
        for agent, agent_specs in by_agent.items():
            agent_specs.sort(key=lambda spec: spec.start)
            for before, after in zip(agent_specs, agent_specs[1:]):
                if after.start < before.end - _EVENT_TOLERANCE:
                    raise ConfigurationError(
                        f"overlapping attack windows on agent {agent}",
                        "attacks",
                    )
        self.__specs = tuple(specs)
        self.__by_agent = {k: tuple(v) for k, v in by_agent.items()}
        self.__active: Dict[int, Optional[AttackSpec]] = {}

    @property
    def specs(self) -> Sequence[AttackSpec]:
        return self.__specs

    def __len__(self) -> int:
        return len(self.__specs)

    @property
    def earliest_onset(self) -> Optional[float]:
        """Start of the first attack, None without attack."""
        starts = [
            spec.start for spec in self.__specs if spec.mode is not AttackMode.NONE
        ]
        return min(starts) if starts else None

    def active_spec(self, agent: int, t: float) -> Optional[AttackSpec]:
        for spec in self.__by_agent.get(agent, ()):
            if spec.is_active(t):
                return spec
        return None

    def positioning(
        self, agent: int, x: np.ndarray, xi: np.ndarray, t: float
    ) -> np.ndarray:
        """Positioning delivered to an agent at time t.

        Onsets and removals are logged once.

        Args:
            agent (int): agent index
            x (np.ndarray): truthful positioning
            xi (np.ndarray): composite tracking error of the agent
            t (float): time

        Returns:
            np.ndarray: the delivered positioning
        """
        spec = self.active_spec(agent, t)
        previous = self.__active.get(agent)
        if spec is not previous:
            if spec is not None:
                logger.info(
                    f"{spec.mode.value} attack on agent {agent} starts at t={t:.2f}s"
                )
            else:
                logger.info(f"attack on agent {agent} removed at t={t:.2f}s")
            self.__active[agent] = spec
        if spec is None:
            return x
        return apply_attack(spec, x, xi, t)
