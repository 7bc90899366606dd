# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Performance index and resilience metrics."""
from .performance import index_from_errors
from .performance import mean_local_errors
from .performance import MetricsConfig
from .performance import MetricsSample
from .performance import MetricsSummary
from .performance import modified_restoration
from .performance import performance_index
from .performance import restoration
from .performance import summarize
from .performance import tracking_sample

__all__ = [
    "MetricsConfig",
    "MetricsSample",
    "MetricsSummary",
    "index_from_errors",
    "mean_local_errors",
    "modified_restoration",
    "performance_index",
    "restoration",
    "summarize",
    "tracking_sample",
]
