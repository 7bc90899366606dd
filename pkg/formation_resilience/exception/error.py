# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
from typing import Optional


class FormationResilienceError(Exception):
    """Base class for other exceptions"""

    exit_code: int = 1


class ConfigurationError(FormationResilienceError):
    """Invalid scenario configuration.

    Args:
        message (str): what is wrong
        field (Optional[str]): dotted path of the offending field
    """

    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        self.message = message
        self.field = field
        prefix = f"{field}: " if field else ""
        super().__init__(f"{prefix}{message}")


class ArgumentError(FormationResilienceError):
    """Invalid argument given to a metric"""

    exit_code = 2


class OutputError(FormationResilienceError):
    """Cannot read or write a run artifact"""

    exit_code = 4
