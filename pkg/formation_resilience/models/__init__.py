# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Data models of the scenario documents."""
from .common import AbstractModel
from .common import ConfigModel
from .common import dumps
from .common import loads
from .common import to_builtin
from .scenario_models import AttackSection
from .scenario_models import EstimatorSection
from .scenario_models import FormationSection
from .scenario_models import GainsSection
from .scenario_models import GraphSection
from .scenario_models import InitialSection
from .scenario_models import KeyframeSection
from .scenario_models import MetricsSection
from .scenario_models import NoiseSection
from .scenario_models import on_grid
from .scenario_models import OscillationSection
from .scenario_models import OutputSection
from .scenario_models import ScenarioConfig
from .scenario_models import SimulationSection
from .scenario_models import SinusoidSection
from .scenario_models import TrajectorySection
from .scenario_models import TuningSection

__all__ = [
    "AbstractModel",
    "AttackSection",
    "ConfigModel",
    "EstimatorSection",
    "FormationSection",
    "GainsSection",
    "GraphSection",
    "InitialSection",
    "KeyframeSection",
    "MetricsSection",
    "NoiseSection",
    "OscillationSection",
    "OutputSection",
    "ScenarioConfig",
    "SimulationSection",
    "SinusoidSection",
    "TrajectorySection",
    "TuningSection",
    "dumps",
    "loads",
    "on_grid",
    "to_builtin",
]
