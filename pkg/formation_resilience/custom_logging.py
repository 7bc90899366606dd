# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Module for customizing the logs of a simulation."""
import logging
from contextvars import ContextVar
from typing import Optional

TRACE = 5

_SIM_TIME: ContextVar[Optional[float]] = ContextVar("sim_time", default=None)


def set_sim_time(sim_time: Optional[float]):
    """Set the simulation time stamped on the records of this context.

    Args:
        sim_time (Optional[float]): simulation time in seconds, None outside a run
    """
    _SIM_TIME.set(sim_time)


class LogRecord(logging.LogRecord):  # pylint: disable=R0903
    """Log record accepting str.format style arguments."""

    def getMessage(self) -> str:
        """Returns the message.

        Returns:
            str: Returns the message
        """
        msg = str(self.msg)
        if self.args:
            if isinstance(self.args, dict):
                msg = msg.format(**self.args)
            else:
                msg = msg.format(*self.args)
        return msg


class SimTimeFilter(logging.Filter):  # pylint: disable=R0903
    """Adds the `sim_time` attribute to every record."""

    def filter(self, record: logging.LogRecord) -> bool:
        sim_time = _SIM_TIME.get()
        record.sim_time = "-" if sim_time is None else f"{sim_time:8.2f}s"
        return True


class ColorFormatter(logging.Formatter):
    """Color formatter for terminals."""

    color_off = "\033[0m"

    log_colors = {
        TRACE: "\033[0;37m",  # grey
        logging.DEBUG: "\033[1;34m",  # blue
        logging.INFO: "\033[0;32m",  # green
        logging.WARNING: "\033[1;33m",  # yellow
        logging.ERROR: "\033[1;31m",  # red
        logging.CRITICAL: "\033[1;41m",  # red reverted
    }

    def format(self, record: logging.LogRecord) -> str:
        """Format the log.

        The record is copied so that other handlers keep the raw text.

        Args:
            record: the log record

        Returns:
            str: the formatted log record
        """
        if not hasattr(record, "sim_time"):
            record.sim_time = "-"
        color = ColorFormatter.log_colors.get(record.levelno, "")
        colored = logging.makeLogRecord(record.__dict__)
        colored.levelname = f"{color}{record.levelname}{self.color_off}"
        return super().format(colored)
