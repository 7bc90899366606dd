# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    performance

Description:
    Formation tracking performance index and the resilience metrics built
    on its time series::

        I = (vartheta + sum ||ebar_i||) / (vartheta + sum ||ebar_i||
                                           + alpha sum ||x~_i||)
        R_s = integral from t_a to t_r of (1 - I)
        Rbar_s = integral (Nor(I) - Att(I)) / integral Nor(I)

    ebar_i is the mean local error of agent i computed with unit weights,
    t_r the recovery time. Integrals use the trapezoidal rule on the
    simulation grid.

Classes:
    MetricsConfig
    MetricsSample
    MetricsSummary

Author:
    formation-resilience developers
"""
import logging
import math
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import Optional
from typing import Tuple

import numpy as np
from scipy.integrate import trapezoid

from ..dynamics import SwarmState
from ..exception import ArgumentError
from ..exception import ConfigurationError
from ..models.common import AbstractModel
from ..network import SensoryGraph
from ..trajectory import FormationPlan

logger = logging.getLogger(__name__)

_GRID_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MetricsConfig:
    """Constants of the performance index and of the recovery detection.

    Attributes:
        vartheta (float): > 0
        alpha (float): weight of the global errors, > 0
        recovery_epsilon (float): recovered when I >= 1 - epsilon, in (0, 1)
        recovery_hold (float): duration the index must stay recovered, >= 0
    """

    vartheta: float = 10.0
    alpha: float = 5.0
    recovery_epsilon: float = 0.01
    recovery_hold: float = 1.0

    def __post_init__(self):
        if self.vartheta <= 0:
            raise ConfigurationError("vartheta must be > 0", "metrics.vartheta")
        if self.alpha <= 0:
            raise ConfigurationError("alpha must be > 0", "metrics.alpha")
        if not 0 < self.recovery_epsilon < 1:
            raise ConfigurationError(
                "recovery_epsilon must lie in (0, 1)", "metrics.recovery_epsilon"
            )
        if self.recovery_hold < 0:
            raise ConfigurationError(
                "recovery_hold must be >= 0", "metrics.recovery_hold"
            )


@dataclass(frozen=True, eq=False)
class MetricsSample:
    """Errors and performance index at one time.

    Attributes:
        time (float): t
        global_errors (np.ndarray): ||x~_i|| per agent
        local_errors (np.ndarray): ||ebar_i|| per agent
        index (float): I in (0, 1]
    """

    time: float
    global_errors: np.ndarray
    local_errors: np.ndarray
    index: float


def index_from_errors(
    local_sum: float, global_sum: float, config: MetricsConfig
) -> float:
    """Performance index from the summed error norms."""
    numerator = config.vartheta + local_sum
    return numerator / (numerator + config.alpha * global_sum)


def mean_local_errors(
    global_errors: np.ndarray, graph: SensoryGraph
) -> np.ndarray:
    """ebar_i = 1/n_i sum_j (x~_i - x~_j) with unit weights, array (N, n)."""
    adjacency = graph.adjacency.astype(float)
    degrees = adjacency.sum(axis=1)
    unit_laplacian = np.diag(degrees) - adjacency
    return (unit_laplacian @ global_errors) / degrees[:, None]


def tracking_sample(
    global_errors: np.ndarray,
    graph: SensoryGraph,
    config: MetricsConfig,
    t: float,
) -> MetricsSample:
    """Metrics sample from the global errors x~_i, array (N, n)."""
    global_norms = np.linalg.norm(global_errors, axis=1)
    local_norms = np.linalg.norm(
        mean_local_errors(global_errors, graph), axis=1
    )
    index = index_from_errors(
        float(local_norms.sum()), float(global_norms.sum()), config
    )
    return MetricsSample(t, global_norms, local_norms, index)


def performance_index(
    state: SwarmState,
    plan: FormationPlan,
    graph: SensoryGraph,
    config: MetricsConfig,
    t: float,
) -> float:
    """Performance index of the swarm at time t.

    Args:
        state (SwarmState): ground truth
        plan (FormationPlan): desired formation
        graph (SensoryGraph): sensory topology, weights ignored
        config (MetricsConfig): constants
        t (float): time

    Returns:
        float: I in (0, 1]
    """
    errors = state.positions - plan.snapshot(t).position
    return tracking_sample(errors, graph, config, t).index


def _check_grid(times: np.ndarray, values: np.ndarray):
    if times.ndim != 1 or times.shape != values.shape:
        raise ArgumentError(
            f"times {times.shape} and values {values.shape} do not match"
        )
    if times.size < 2 or np.any(np.diff(times) <= 0):
        raise ArgumentError("times must be increasing with two samples or more")


def _window(
    times: np.ndarray, start: float, end: float
) -> Tuple[int, int]:
    """Index range [first, last] of the samples within [start, end]."""
    if (
        start < times[0] - _GRID_TOLERANCE
        or end > times[-1] + _GRID_TOLERANCE
        or end < start
    ):
        raise ArgumentError(
            f"[{start}, {end}] is not within the series "
            f"[{times[0]}, {times[-1]}]"
        )
    first = int(np.searchsorted(times, start - _GRID_TOLERANCE, side="left"))
    last = int(np.searchsorted(times, end + _GRID_TOLERANCE, side="right")) - 1
    return first, last


def recovery_index(
    index: np.ndarray,
    times: np.ndarray,
    first: int,
    config: MetricsConfig,
) -> Optional[int]:
    """First sample after the dip where the index stays recovered for the hold.

    The search starts once the index has left the recovered band after
    first. An index that never leaves it recovers at first. A recovered run
    reaching the end of the series must last the hold as well.
    """
    recovered = index >= 1.0 - config.recovery_epsilon
    dips = np.flatnonzero(~recovered[first:])
    if dips.size == 0:
        return first
    start = first + int(dips[0])
    below = np.flatnonzero(~recovered)
    for candidate in np.flatnonzero(recovered[start:]) + start:
        position = int(np.searchsorted(below, candidate))
        if position == below.size:
            run_end = index.size - 1
        else:
            run_end = below[position] - 1
        held = times[run_end] - times[candidate]
        if held >= config.recovery_hold - _GRID_TOLERANCE:
            return int(candidate)
    return None


def restoration(
    index: np.ndarray,
    times: np.ndarray,
    t_a: float,
    config: MetricsConfig,
) -> Tuple[float, Optional[float]]:
    """Restoration R_s of a performance index series.

    Args:
        index (np.ndarray): performance index series
        times (np.ndarray): sampling times, fixed step
        t_a (float): attack time
        config (MetricsConfig): recovery threshold and hold

    Raises:
        ArgumentError: t_a outside the series

    Returns:
        Tuple[float, Optional[float]]: R_s and t_r, (inf, None) when the index
        never recovers
    """
    index = np.asarray(index, dtype=float)
    times = np.asarray(times, dtype=float)
    _check_grid(times, index)
    first, _ = _window(times, t_a, t_a)
    found = recovery_index(index, times, first, config)
    if found is None:
        logger.debug(f"performance index never recovers after t={t_a}")
        return math.inf, None
    if found == first:
        return 0.0, float(times[found])
    degradation = 1.0 - index[first : found + 1]
    value = float(trapezoid(degradation, times[first : found + 1]))
    return value, float(times[found])


def modified_restoration(
    reference: np.ndarray,
    attacked: np.ndarray,
    reference_times: np.ndarray,
    attacked_times: np.ndarray,
    t_a: float,
    t_s: float,
) -> float:
    """Relative loss of performance of an attacked run against a reference.

    Args:
        reference (np.ndarray): index series of the attack-free run
        attacked (np.ndarray): index series of the attacked run
        reference_times (np.ndarray): sampling times of the reference
        attacked_times (np.ndarray): sampling times of the attacked run
        t_a (float): start of the window
        t_s (float): end of the window

    Raises:
        ArgumentError: the series do not share the grid on [t_a, t_s]

    Returns:
        float: Rbar_s, 0 when both series are equal
    """
    reference = np.asarray(reference, dtype=float)
    attacked = np.asarray(attacked, dtype=float)
    reference_times = np.asarray(reference_times, dtype=float)
    attacked_times = np.asarray(attacked_times, dtype=float)
    _check_grid(reference_times, reference)
    _check_grid(attacked_times, attacked)
    ref_first, ref_last = _window(reference_times, t_a, t_s)
    att_first, att_last = _window(attacked_times, t_a, t_s)
    grid = reference_times[ref_first : ref_last + 1]
    other = attacked_times[att_first : att_last + 1]
    if grid.shape != other.shape or not np.allclose(
        grid, other, atol=_GRID_TOLERANCE, rtol=0
    ):
        raise ArgumentError("reference and attacked series use different grids")
    if grid.size < 2:
        return 0.0
    nominal = reference[ref_first : ref_last + 1]
    loss = nominal - attacked[att_first : att_last + 1]
    return float(trapezoid(loss, grid) / trapezoid(nominal, grid))


@dataclass(frozen=True)
class MetricsSummary(AbstractModel):
    """Resilience metrics of a run.

    Attributes:
        restoration (float): R_s, inf when the index never recovers
        recovery_time (Optional[float]): t_r
        min_index (float): minimum of I over [attack_time, end_time]
        final_index (float): I at the last step
        modified_restoration (Optional[float]): Rbar_s when a reference exists
        attack_time (Optional[float]): t_a, None without attack
        end_time (float): t_s
        config_hash (str): hash of the scenario
        seed (int): seed of the run
    """

    restoration: float
    recovery_time: Optional[float]
    min_index: float
    final_index: float
    modified_restoration: Optional[float] = None
    attack_time: Optional[float] = None
    end_time: float = 0.0
    config_hash: str = ""
    seed: int = 0

    @property
    def recovered(self) -> bool:
        return self.recovery_time is not None

    def to_record(self) -> Dict[str, Any]:
        """JSON-ready record, R_s written as null when not recovered."""
        record = dict(self.__dict__)
        record["recovered"] = self.recovered
        if not math.isfinite(self.restoration):
            record["restoration"] = None
        return record

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "MetricsSummary":
        values = dict(record)
        values.pop("recovered", None)
        if values.get("restoration") is None:
            values["restoration"] = math.inf
        return cls.from_dict(values)


def summarize(
    index: np.ndarray,
    times: np.ndarray,
    config: MetricsConfig,
    attack_time: Optional[float] = None,
    end_time: Optional[float] = None,
    reference: Optional[np.ndarray] = None,
    reference_times: Optional[np.ndarray] = None,
    config_hash: str = "",
    seed: int = 0,
) -> MetricsSummary:
    """Metrics summary of an index series.

    Without attack time the whole series is summarized and R_s is measured
    from the first sample.

    Args:
        index (np.ndarray): performance index series
        times (np.ndarray): sampling times
        config (MetricsConfig): constants
        attack_time (Optional[float]): t_a
        end_time (Optional[float]): t_s, last sample when None
        reference (Optional[np.ndarray]): attack-free index series
        reference_times (Optional[np.ndarray]): its sampling times
        config_hash (str): hash of the scenario
        seed (int): seed of the run

    Raises:
        ArgumentError: window outside the series

    Returns:
        MetricsSummary: the metrics
    """
    index = np.asarray(index, dtype=float)
    times = np.asarray(times, dtype=float)
    _check_grid(times, index)
    start = float(times[0]) if attack_time is None else attack_time
    end = float(times[-1]) if end_time is None else end_time
    first, last = _window(times, start, end)
    value, recovery_time = restoration(index, times, start, config)
    modified = None
    if reference is not None:
        modified = modified_restoration(
            reference,
            index,
            times if reference_times is None else reference_times,
            times,
            start,
            end,
        )
    return MetricsSummary(
        restoration=value,
        recovery_time=recovery_time,
        min_index=float(index[first : last + 1].min()),
        final_index=float(index[-1]),
        modified_restoration=modified,
        attack_time=attack_time,
        end_time=end,
        config_hash=config_hash,
        seed=seed,
    )
