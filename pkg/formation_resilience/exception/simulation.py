# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
from typing import Optional

from .error import FormationResilienceError


class SimulationDivergedError(FormationResilienceError):
    """A state or an input is no longer finite.

    Args:
        agent (int): index of the offending agent
        time (float): simulation time in seconds
        reason (str): what diverged
    """

    exit_code = 3

    def __init__(self, agent: int, time: float, reason: str = "non-finite"):
        self.agent = agent
        self.time = time
        super().__init__(f"agent {agent} diverged at t={time:.4f}s: {reason}")


class EstimatorDegenerateError(FormationResilienceError):
    """The information matrix is no longer symmetric positive definite."""

    exit_code = 3

    def __init__(self, reason: str, agent: Optional[int] = None):
        self.reason = reason
        self.agent = agent
        prefix = f"agent {agent}: " if agent is not None else ""
        super().__init__(f"{prefix}{reason}")


class DisconnectedGraphError(FormationResilienceError):
    """The sensory graph is not connected."""

    exit_code = 2

    def __init__(self, algebraic_connectivity: float):
        self.algebraic_connectivity = algebraic_connectivity
        super().__init__(
            f"sensory graph is disconnected (lambda_2={algebraic_connectivity:.3e})"
        )
