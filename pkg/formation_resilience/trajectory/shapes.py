# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    shapes

Description:
    Named formation shapes in the plane, one vertex per agent, unit
    circumradius, agent 0 on the positive second axis and agents numbered
    counter-clockwise.

Author:
    formation-resilience developers
"""
import logging
from typing import Dict

import numpy as np

from ..exception import ConfigurationError

logger = logging.getLogger(__name__)

_HALF_ROOT3 = np.sqrt(3.0) / 2.0

# shapes defined for six agents only
_SIX_AGENT_SHAPES: Dict[str, np.ndarray] = {
    "rectangle": np.array(
        [
            [0.0, 0.6],
            [-0.8, 0.6],
            [-0.8, -0.6],
            [0.0, -0.6],
            [0.8, -0.6],
            [0.8, 0.6],
        ]
    ),
    "triangle": np.array(
        [
            [0.0, 1.0],
            [-_HALF_ROOT3 / 2.0, 0.25],
            [-_HALF_ROOT3, -0.5],
            [0.0, -0.5],
            [_HALF_ROOT3, -0.5],
            [_HALF_ROOT3 / 2.0, 0.25],
        ]
    ),
}


def regular_polygon(agent_count: int) -> np.ndarray:
    """Vertices of the regular polygon with agent_count vertices, (N, 2)."""
    angles = np.pi / 2.0 + 2.0 * np.pi * np.arange(agent_count) / agent_count
    vertices = np.column_stack([np.cos(angles), np.sin(angles)])
    vertices[np.abs(vertices) < 1e-15] = 0.0
    return vertices


def shape_offsets(
    name: str,
    agent_count: int,
    dimension: int,
    scale: float = 1.0,
    height: float = 0.0,
) -> np.ndarray:
    """Offsets of a named shape.

    Args:
        name (str): hexagon, polygon, rectangle or triangle
        agent_count (int): number of agents N
        dimension (int): 2 or 3, the third axis is set to height
        scale (float): circumradius
        height (float): constant third coordinate in 3-D

    Raises:
        ConfigurationError: unknown shape or shape not defined for N agents

    Returns:
        np.ndarray: offsets (N, dimension)
    """
    if name in ("hexagon", "polygon"):
        if name == "hexagon" and agent_count != 6:
            raise ConfigurationError(
                f"a hexagon needs 6 agents, not {agent_count}",
                "formation.keyframes.shape",
            )
        planar = regular_polygon(agent_count)
    elif name in _SIX_AGENT_SHAPES:
        if agent_count != 6:
            raise ConfigurationError(
                f"the {name} shape is defined for 6 agents",
                "formation.keyframes.shape",
            )
        planar = _SIX_AGENT_SHAPES[name]
    else:
        raise ConfigurationError(
            f"unknown shape {name}", "formation.keyframes.shape"
        )
    offsets = scale * planar
    if dimension == 3:
        offsets = np.column_stack([offsets, np.full(agent_count, height)])
    return offsets
