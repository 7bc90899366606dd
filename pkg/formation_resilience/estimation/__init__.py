# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Resilient state estimation of each agent."""
from .information_filter import estimation_lyapunov
from .information_filter import EstimatorMode
from .information_filter import EstimatorState
from .information_filter import is_consistent
from .information_filter import kl_divergence
from .information_filter import MeasurementModels
from .information_filter import predict
from .information_filter import quality_measure
from .information_filter import update
from .resilient_estimator import DEFAULT_INITIAL_VARIANCE
from .resilient_estimator import resilient_step
from .resilient_estimator import ResilientEstimator

__all__ = [
    "DEFAULT_INITIAL_VARIANCE",
    "EstimatorMode",
    "EstimatorState",
    "MeasurementModels",
    "ResilientEstimator",
    "estimation_lyapunov",
    "is_consistent",
    "kl_divergence",
    "predict",
    "quality_measure",
    "resilient_step",
    "update",
]
