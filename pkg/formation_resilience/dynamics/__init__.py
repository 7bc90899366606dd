# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Ground-truth dynamics and on-board sensors."""
from .integrator import AgentState
from .integrator import check_finite
from .integrator import step
from .integrator import SwarmState
from .sensors import measure
from .sensors import Measurements
from .sensors import NoiseConfig

__all__ = [
    "AgentState",
    "SwarmState",
    "step",
    "check_finite",
    "measure",
    "Measurements",
    "NoiseConfig",
]
