# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Project metadata."""
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version

__name_soft__ = "formation_resilience"
try:
    __version__ = version(__name_soft__)
except PackageNotFoundError:
    __version__ = "0.0.0"
__title__ = "formation-resilience"
__description__ = """Simulate multi-agent time-varying formation tracking
under deception attacks on global positioning, with communication-free
cooperative localization, KL-divergence attack detection and gain tuning."""
__url__ = ""
__author__ = "formation-resilience developers"
__author_email__ = ""
__license__ = "GNU Lesser General Public License v3"
__copyright__ = "2024, formation-resilience developers"
