# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    runner

Description:
    Single-rate simulation loop. At every step k, from the states at k:

    1. desired states and ground-truth tracking errors,
    2. on-board measurements,
    3. deception attacks on the positioning signal,
    4. resilient estimation,
    5. resolution of the positioning source of the controller,
    6. gain tuning when active,
    7. control inputs,
    8. metrics and log record,
    9. integration to k + 1.

    The run is deterministic for a given scenario and seed.

Classes:
    Simulation
    RunResult

Author:
    formation-resilience developers
"""
import logging
import os
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional

import numpy as np

from ..attacks import AttackSchedule
from ..control import control_input
from ..control import lyapunov_value
from ..control import PositioningMode
from ..control import tracking_errors
from ..control import TuningMode
from ..custom_logging import set_sim_time
from ..dynamics import Measurements
from ..dynamics import measure
from ..dynamics import step
from ..dynamics import SwarmState
from ..estimation import EstimatorMode
from ..estimation import ResilientEstimator
from ..exception import SimulationDivergedError
from ..metrics import MetricsSummary
from ..metrics import summarize
from ..metrics import tracking_sample
from ..models import ScenarioConfig
from ..trajectory import DesiredStates
from ..utils import ProgressLogger
from ..utils import UtilsMonitoring
from .config import build_components
from .config import config_hash
from .config import ScenarioComponents
from .run_log import RunLog
from .run_log import RunLogRecorder
from .run_log import write_csv
from .run_log import write_series
from .run_log import write_summary

logger = logging.getLogger(__name__)


def local_errors_seen(
    measurements: List[Measurements], desired: DesiredStates
) -> np.ndarray:
    """||1/n_i sum_j (r_ji - h_ji)|| of every agent from its measurements."""
    norms = np.zeros(len(measurements))
    for m in measurements:
        total = np.zeros(desired.position.shape[1])
        for j, displacement in m.relative_displacements.items():
            total += displacement - desired.displacement(m.agent, j)[0]
        if m.relative_displacements:
            total /= len(m.relative_displacements)
        norms[m.agent] = np.linalg.norm(total)
    return norms


class Simulation:
    """Simulation of a scenario.

    Args:
        config (ScenarioConfig): validated scenario
        seed (Optional[int]): seed of the noises, the scenario seed when None
        progress (bool): True to draw a progress bar

    Raises:
        ConfigurationError: inconsistent scenario
    """

    def __init__(
        self,
        config: ScenarioConfig,
        seed: Optional[int] = None,
        progress: bool = False,
    ):
        self.__config = config
        self.__components = build_components(config)
        self.__seed = config.simulation.seed if seed is None else seed
        self.__hash = config_hash(config)
        self.__progress = progress

    @property
    def config(self) -> ScenarioConfig:
        return self.__config

    @property
    def components(self) -> ScenarioComponents:
        return self.__components

    @property
    def seed(self) -> int:
        return self.__seed

    @property
    def config_hash(self) -> str:
        return self.__hash

    def _estimate(
        self,
        k: int,
        t: float,
        estimators: Optional[List[ResilientEstimator]],
        measurements: List[Measurements],
        positioning: np.ndarray,
        desired: DesiredStates,
    ):
        count = len(measurements)
        if estimators is None:
            return (
                positioning,
                np.ones(count),
                np.zeros(count),
                [EstimatorMode.DISABLED.value] * count,
            )
        if k > 0:
            for estimator, m in zip(estimators, measurements):
                estimator.step(
                    m.velocity,
                    positioning[m.agent],
                    {j: -r for j, r in m.relative_displacements.items()},
                    desired.position,
                    t,
                )
        states = [estimator.state for estimator in estimators]
        return (
            np.array([s.estimate for s in states]),
            np.array([s.beta for s in states]),
            np.array([s.kl_divergence for s in states]),
            [s.mode.value for s in states],
        )

    def _check_bound(self, state: SwarmState, t: float):
        bound = self.__config.simulation.divergence_bound
        beyond = np.abs(state.positions).max(axis=1) > bound
        if beyond.any():
            agent = int(np.flatnonzero(beyond)[0])
            raise SimulationDivergedError(
                agent, t, f"position beyond {bound:g} m"
            )

    @UtilsMonitoring.timeit
    def run(self, with_attacks: bool = True) -> RunLog:
        """Runs the scenario.

        Args:
            with_attacks (bool): False runs the attack-free reference

        Raises:
            SimulationDivergedError: a state left the finite range or the bound
            EstimatorDegenerateError: an information matrix lost definiteness

        Returns:
            RunLog: one record per step, duration / dt + 1 records
        """
        components = self.__components
        simulation = self.__config.simulation
        graph, plan, gains = components.graph, components.plan, components.gains
        count, dt = simulation.agent_count, simulation.dt
        steps = simulation.step_count
        tuner = components.new_tuner()
        schedule = (
            components.new_attacks()
            if with_attacks
            else AttackSchedule((), count)
        )
        noise = components.noise(self.__seed)
        rng = noise.rng()
        state = components.initial_state
        estimators = None
        if components.estimator_enabled:
            estimators = [
                ResilientEstimator(
                    i,
                    state.positions[i],
                    components.models,
                    components.initial_covariance,
                )
                for i in range(count)
            ]
        use_estimate = components.positioning is PositioningMode.ESTIMATOR
        recorder = RunLogRecorder(
            simulation.name,
            self.__hash,
            self.__seed,
            steps + 1,
            count,
            simulation.dimension,
        )
        label = "reference" if not with_attacks else "run"
        logger.info(
            f"{label} of {simulation.name} (hash {self.__hash[:12]}, "
            f"seed {self.__seed}, {len(schedule)} attacks)"
        )
        try:
            with ProgressLogger(
                steps + 1,
                description=f"{label} {simulation.name}",
                disable_tqdm=not self.__progress,
                leave=False,
            ) as progress:
                for k in range(steps + 1):
                    t = k * dt
                    set_sim_time(t)
                    desired = plan.snapshot(t)
                    errors = tracking_errors(
                        state, desired, graph, gains, tuner.kappa_g
                    )
                    measurements = measure(state, graph, noise, rng)
                    positioning = np.array(
                        [
                            schedule.positioning(
                                m.agent,
                                m.global_position,
                                errors.composite[m.agent],
                                t,
                            )
                            for m in measurements
                        ]
                    )
                    estimates, betas, divergences, modes = self._estimate(
                        k, t, estimators, measurements, positioning, desired
                    )
                    used = estimates if use_estimate else positioning
                    if tuner.mode is TuningMode.ERROR and tuner.is_active(t):
                        # own estimate, never the positioning signal
                        local_seen = local_errors_seen(measurements, desired)
                        global_seen = np.linalg.norm(
                            estimates - desired.position, axis=1
                        )
                    else:
                        local_seen = global_seen = np.zeros(count)
                    kappa_g = tuner.update(
                        t, dt, betas, local_seen, global_seen
                    ).copy()
                    inputs = np.array(
                        [
                            control_input(
                                m.agent,
                                m,
                                used[m.agent],
                                desired,
                                graph,
                                gains,
                                kappa_g=float(kappa_g[m.agent]),
                            )
                            for m in measurements
                        ]
                    )
                    sample = tracking_sample(
                        errors.global_error, graph, components.metrics, t
                    )
                    recorder.record(
                        times=t,
                        index=sample.index,
                        positions=state.positions,
                        velocities=state.velocities,
                        inputs=inputs,
                        estimates=estimates,
                        betas=betas,
                        kl_divergences=divergences,
                        kappa_g=kappa_g,
                        modes=modes,
                        global_errors=sample.global_errors,
                        local_errors=sample.local_errors,
                        lyapunov=[
                            lyapunov_value(errors.composite[i], gains.sigma_f[i])
                            for i in range(count)
                        ],
                    )
                    self._check_bound(state, t)
                    if k < steps:
                        state = step(state, inputs, dt, t)
                    progress.update()
        finally:
            set_sim_time(None)
        run_log = recorder.finish()
        logger.info(
            f"{label} of {simulation.name} done, final index "
            f"{run_log.index[-1]:.6f}"
        )
        return run_log


@dataclass(frozen=True, eq=False)
class RunResult:
    """A run with its metrics and its attack-free reference when computed."""

    run_log: RunLog
    summary: MetricsSummary
    reference: Optional[RunLog] = None


def run(
    config: ScenarioConfig, seed: Optional[int] = None, progress: bool = False
) -> RunLog:
    """Runs a scenario and returns its log.

    Args:
        config (ScenarioConfig): validated scenario
        seed (Optional[int]): seed override
        progress (bool): True to draw a progress bar

    Returns:
        RunLog: the log
    """
    return Simulation(config, seed, progress).run()


def run_with_metrics(
    config: ScenarioConfig, seed: Optional[int] = None, progress: bool = False
) -> RunResult:
    """Runs a scenario, its attack-free reference if requested, and the metrics.

    The metrics window starts at metrics.attack_time, else at the first
    attack onset, and ends at metrics.end_time, else at the last record.

    Args:
        config (ScenarioConfig): validated scenario
        seed (Optional[int]): seed override
        progress (bool): True to draw a progress bar

    Returns:
        RunResult: log, summary and reference
    """
    simulation = Simulation(config, seed, progress)
    run_log = simulation.run()
    reference = None
    if config.metrics.compare_attack_free:
        reference = simulation.run(with_attacks=False)
    attack_time = config.metrics.attack_time
    if attack_time is None:
        attack_time = simulation.components.new_attacks().earliest_onset
    summary = summarize(
        run_log.index,
        run_log.times,
        simulation.components.metrics,
        attack_time=attack_time,
        end_time=config.metrics.end_time,
        reference=None if reference is None else reference.index,
        reference_times=None if reference is None else reference.times,
        config_hash=simulation.config_hash,
        seed=simulation.seed,
    )
    logger.info(
        f"min index {summary.min_index:.4f}, restoration "
        f"{summary.restoration:.4f}, recovered at {summary.recovery_time}"
    )
    return RunResult(run_log, summary, reference)


def result_extra(run_log: RunLog) -> Dict[str, List[float]]:
    """Per-agent extrema reported next to the metrics."""
    return {
        "min_kappa_g": run_log.kappa_g.min(axis=0).tolist(),
        "max_kl_divergence": run_log.kl_divergences.max(axis=0).tolist(),
        "max_tracking_error": run_log.global_errors.max(axis=0).tolist(),
    }


def save_result(
    result: RunResult, config: ScenarioConfig, directory: Optional[str] = None
) -> Dict[str, str]:
    """Writes the run CSV, the JSON summary and the series if requested.

    Args:
        result (RunResult): the run
        config (ScenarioConfig): its scenario
        directory (Optional[str]): output directory, output.directory if None

    Raises:
        OutputError: a file cannot be written

    Returns:
        Dict[str, str]: written paths by kind
    """
    directory = directory or config.output.directory
    prefix = config.output.prefix or config.name
    paths = {
        "log": os.path.join(directory, f"{prefix}.csv"),
        "summary": os.path.join(directory, f"{prefix}_summary.json"),
    }
    write_csv(paths["log"], result.run_log)
    write_summary(
        paths["summary"],
        result.run_log,
        result.summary,
        result_extra(result.run_log),
    )
    if result.reference is not None:
        paths["reference"] = os.path.join(directory, f"{prefix}_reference.csv")
        write_csv(paths["reference"], result.reference)
    if config.output.series:
        series = os.path.join(directory, f"{prefix}_series")
        for path in write_series(series, result.run_log):
            paths[os.path.splitext(os.path.basename(path))[0]] = path
    return paths
