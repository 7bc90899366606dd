# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Desired trajectories of the formation."""
from .formation import AgentOscillations
from .formation import DesiredStates
from .formation import FormationPlan
from .formation import KeyframeSchedule
from .formation import smoothstep
from .providers import ConstantTrajectory
from .providers import LemniscateTrajectory
from .providers import SinusoidSum
from .providers import SinusoidTerm
from .providers import TrajectoryKind
from .providers import TrajectoryProvider
from .shapes import regular_polygon
from .shapes import shape_offsets

__all__ = [
    "AgentOscillations",
    "ConstantTrajectory",
    "DesiredStates",
    "FormationPlan",
    "KeyframeSchedule",
    "LemniscateTrajectory",
    "SinusoidSum",
    "SinusoidTerm",
    "TrajectoryKind",
    "TrajectoryProvider",
    "regular_polygon",
    "shape_offsets",
    "smoothstep",
]
