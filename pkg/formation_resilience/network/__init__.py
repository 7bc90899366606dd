# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Sensory topology between the agents."""
from .graph import algebraic_connectivity
from .graph import build_laplacian
from .graph import CONNECTIVITY_TOLERANCE
from .graph import laplacian_spectrum
from .graph import SensoryGraph

__all__ = [
    "SensoryGraph",
    "build_laplacian",
    "algebraic_connectivity",
    "laplacian_spectrum",
    "CONNECTIVITY_TOLERANCE",
]
