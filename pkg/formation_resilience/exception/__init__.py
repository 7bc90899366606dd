# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
from .error import ArgumentError
from .error import ConfigurationError
from .error import FormationResilienceError
from .error import OutputError
from .simulation import DisconnectedGraphError
from .simulation import EstimatorDegenerateError
from .simulation import SimulationDivergedError

__all__ = [
    "FormationResilienceError",
    "ConfigurationError",
    "ArgumentError",
    "OutputError",
    "SimulationDivergedError",
    "EstimatorDegenerateError",
    "DisconnectedGraphError",
]
