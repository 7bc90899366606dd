# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Formation tracking control and gain tuning."""
from .controller import control_input
from .controller import ControllerGains
from .controller import global_term
from .controller import local_term
from .controller import lyapunov_value
from .controller import PositioningMode
from .controller import stacked_error_matrix
from .controller import tracking_errors
from .controller import TrackingErrors
from .gain_tuning import GainTuner
from .gain_tuning import tune_gain
from .gain_tuning import tune_gain_from_errors
from .gain_tuning import TuningMode
from .gain_tuning import TuningParams

__all__ = [
    "ControllerGains",
    "GainTuner",
    "PositioningMode",
    "TrackingErrors",
    "TuningMode",
    "TuningParams",
    "control_input",
    "global_term",
    "local_term",
    "lyapunov_value",
    "stacked_error_matrix",
    "tracking_errors",
    "tune_gain",
    "tune_gain_from_errors",
]
