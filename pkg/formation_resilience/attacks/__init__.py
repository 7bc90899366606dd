# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Deception attacks on the global positioning."""
from .deception import apply_attack
from .deception import attack_effect
from .deception import AttackEffect
from .deception import AttackMode
from .deception import AttackSchedule
from .deception import AttackSpec

__all__ = [
    "AttackEffect",
    "AttackMode",
    "AttackSchedule",
    "AttackSpec",
    "apply_attack",
    "attack_effect",
]
