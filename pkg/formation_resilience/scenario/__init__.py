# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Scenario loading, simulation loop, run logs and sweeps."""
from .config import apply_overrides
from .config import build_components
from .config import bundled_scenarios
from .config import bundled_sweeps
from .config import config_hash
from .config import load_scenario
from .config import ScenarioComponents
from .run_log import column_names
from .run_log import read_csv
from .run_log import RunLog
from .run_log import RunLogRecorder
from .run_log import write_csv
from .run_log import write_series
from .run_log import write_summary
from .runner import run
from .runner import run_with_metrics
from .runner import RunResult
from .runner import save_result
from .runner import Simulation
from .sweep import load_sweep
from .sweep import run_seeds
from .sweep import sweep
from .sweep import SweepOutcome
from .sweep import SweepPlan
from .sweep import write_sweep

__all__ = [
    "RunLog",
    "RunLogRecorder",
    "RunResult",
    "ScenarioComponents",
    "Simulation",
    "SweepOutcome",
    "SweepPlan",
    "apply_overrides",
    "build_components",
    "bundled_scenarios",
    "bundled_sweeps",
    "column_names",
    "config_hash",
    "load_scenario",
    "load_sweep",
    "read_csv",
    "run",
    "run_seeds",
    "run_with_metrics",
    "save_result",
    "sweep",
    "write_csv",
    "write_series",
    "write_summary",
    "write_sweep",
]
