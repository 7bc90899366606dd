# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    utils

Description:
    Small utilities shared by the package: documented enums, timing of the runs
    and a progress logger wrapping tqdm.

Classes:
    DocEnum
    UtilsMonitoring
    ProgressLogger
"""
import logging
import time
from enum import Enum
from functools import wraps
from typing import Optional

from tqdm import tqdm

logger = logging.getLogger(__name__)


class DocEnum(Enum):
    """Enum where we can add documentation."""

    def __new__(cls, value, doc=None):
        self = object.__new__(
            cls
        )  # calling super().__new__(value) here would fail
        self._value_ = value
        if doc is not None:
            self.__doc__ = doc
        return self

    @classmethod
    def find_enum(cls, name: str):
        """Find enum based on its value

        Args:
            name (str): enum value

        Raises:
            ValueError: Unknown value

        Returns:
            DocEnum: Enum
        """
        for member in cls:
            if str(member.value) == name:
                return member
        raise ValueError(
            f"Unknown enum value for {name}, expected one of "
            f"{[member.value for member in cls]}"
        )


class UtilsMonitoring:  # noqa: R0205
    """Some Utilities."""

    @staticmethod
    def timeit(func):
        """Decorator to measure the time spent in a function"""

        @wraps(func)
        def timeit_wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            total_time = time.perf_counter() - start_time
            logging.getLogger(func.__module__).info(
                f"{func.__qualname__} took {total_time:.4f} seconds"
            )
            return result

        return timeit_wrapper


class ProgressLogger:
    """A progress logger that can be used with or without tqdm.

    Without tqdm, a message is logged every tenth of the total.

    Args:
        total (int): total number of items to process
        description (str): description of the progress bar
        disable_tqdm (bool): True to log instead of drawing a bar
    """

    def __init__(
        self,
        total: int,
        description: str = "processing",
        disable_tqdm: bool = True,
        **kwargs,
    ):
        self.__total = max(int(total), 1)
        self.__description = description
        self.__disable_tqdm = disable_tqdm
        self.__count: int = 0
        self.__next_report: int = 0
        self.__pbar: Optional[tqdm] = None
        self.__kwargs = kwargs

    @property
    def count(self) -> int:
        """Number of processed items."""
        return self.__count

    def __enter__(self):
        if not self.__disable_tqdm:
            self.__pbar = tqdm(
                total=self.__total, desc=self.__description, **self.__kwargs
            )
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()

    def update(self, n: int = 1):
        """Updates the progress with the specified number of items.

        Args:
            n (int): number of processed items
        """
        self.__count += n
        if self.__pbar is not None:
            self.__pbar.update(n)
        elif self.__count >= self.__next_report:
            percent = int(100 * self.__count / self.__total)
            logger.debug(f"{self.__description} : {percent}%")
            self.__next_report += max(self.__total // 10, 1)

    def close(self):
        """Close the tqdm progress bar."""
        if self.__pbar is not None:
            self.__pbar.close()
            self.__pbar = None
