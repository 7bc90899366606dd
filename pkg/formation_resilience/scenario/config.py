# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    config

Description:
    Loading of the TOML scenario documents, configuration hash, sweep
    overrides and construction of the domain objects of a run.

Classes:
    ScenarioComponents

Author:
    formation-resilience developers
"""
import copy
import hashlib
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import List
from typing import Mapping
from typing import Sequence

import numpy as np

from ..attacks import AttackMode
from ..attacks import AttackSchedule
from ..attacks import AttackSpec
from ..control import ControllerGains
from ..control import GainTuner
from ..control import PositioningMode
from ..control import TuningMode
from ..control import TuningParams
from ..dynamics import NoiseConfig
from ..dynamics import SwarmState
from ..estimation import MeasurementModels
from ..exception import ConfigurationError
from ..exception import OutputError
from ..metrics import MetricsConfig
from ..models import dumps
from ..models import ScenarioConfig
from ..models import to_builtin
from ..network import SensoryGraph
from ..trajectory import AgentOscillations
from ..trajectory import ConstantTrajectory
from ..trajectory import FormationPlan
from ..trajectory import KeyframeSchedule
from ..trajectory import LemniscateTrajectory
from ..trajectory import shape_offsets
from ..trajectory import SinusoidSum
from ..trajectory import SinusoidTerm
from ..trajectory import TrajectoryProvider

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

logger = logging.getLogger(__name__)

SCENARIO_DIRECTORY = os.path.join(
    os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "scenarios"
)
SWEEP_DIRECTORY = os.path.join(SCENARIO_DIRECTORY, "sweeps")
SCENARIO_SUFFIX = ".toml"


def _names(directory: str) -> List[str]:
    if not os.path.isdir(directory):
        return []
    return sorted(
        os.path.splitext(name)[0]
        for name in os.listdir(directory)
        if name.endswith(SCENARIO_SUFFIX)
    )


def bundled_scenarios() -> List[str]:
    """Names of the scenarios shipped with the package."""
    return _names(SCENARIO_DIRECTORY)


def bundled_sweeps() -> List[str]:
    """Names of the sweep files shipped with the package."""
    return _names(SWEEP_DIRECTORY)


def resolve_path(name_or_path: str, directory: str = SCENARIO_DIRECTORY) -> str:
    """Path of a scenario given by path or by bundled name.

    Raises:
        OutputError: no such file
    """
    if os.path.isfile(name_or_path):
        return os.path.abspath(name_or_path)
    candidate = os.path.join(directory, f"{name_or_path}{SCENARIO_SUFFIX}")
    if os.path.isfile(candidate):
        return candidate
    raise OutputError(f"no scenario file or bundled scenario {name_or_path}")


def read_document(path: str) -> Dict[str, Any]:
    """Reads a TOML document.

    Raises:
        OutputError: the file cannot be read
        ConfigurationError: the file is not valid TOML
    """
    try:
        with open(path, "rb") as file:
            return tomllib.load(file)
    except tomllib.TOMLDecodeError as error:
        raise ConfigurationError(f"invalid TOML in {path}: {error}") from error
    except OSError as error:
        raise OutputError(f"cannot read {path}: {error}") from error


def load_scenario(name_or_path: str) -> ScenarioConfig:
    """Loads and validates a scenario.

    Args:
        name_or_path (str): path of a TOML file or name of a bundled scenario

    Raises:
        OutputError: the file cannot be read
        ConfigurationError: the document is invalid

    Returns:
        ScenarioConfig: the validated scenario
    """
    path = resolve_path(name_or_path)
    config = ScenarioConfig.from_dict(read_document(path))
    logger.debug(f"scenario {config.name} loaded from {path}")
    return config


def config_hash(config: ScenarioConfig) -> str:
    """SHA-256 of the canonical JSON of every table but the output one."""
    canonical = dumps(config.semantic_document(), indent=False)
    return hashlib.sha256(canonical).hexdigest()


def set_path(document: Dict[str, Any], path: str, value: Any):
    """Sets a value at a dotted path, array items addressed by index.

    Raises:
        ConfigurationError: the path does not exist
    """
    keys = path.split(".")
    node: Any = document
    for number, key in enumerate(keys[:-1]):
        prefix = ".".join(keys[: number + 1])
        if isinstance(node, list):
            if not key.isdigit() or int(key) >= len(node):
                raise ConfigurationError("no such array item", prefix)
            node = node[int(key)]
        elif isinstance(node, dict):
            if key not in node:
                raise ConfigurationError("no such table", prefix)
            node = node[key]
        else:
            raise ConfigurationError("not a table", prefix)
    last = keys[-1]
    if isinstance(node, list):
        if not last.isdigit() or int(last) >= len(node):
            raise ConfigurationError("no such array item", path)
        node[int(last)] = value
    elif isinstance(node, dict):
        node[last] = value
    else:
        raise ConfigurationError("not a table", path)


def apply_overrides(
    config: ScenarioConfig, overrides: Mapping[str, Any]
) -> ScenarioConfig:
    """New scenario with values replaced at dotted paths.

    Args:
        config (ScenarioConfig): base scenario
        overrides (Mapping[str, Any]): dotted path to value

    Raises:
        ConfigurationError: unknown path or invalid resulting scenario

    Returns:
        ScenarioConfig: the overridden scenario
    """
    if not overrides:
        return config
    document = to_builtin(config.__dict__)
    for path, value in overrides.items():
        set_path(document, path, copy.deepcopy(value))
    return ScenarioConfig.from_dict(document)


def covariance_matrix(value: Any, dimension: int, field: str) -> np.ndarray:
    """Scalar c to c I, vector to a diagonal, matrix unchanged."""
    array = np.array(value, dtype=float)
    if array.ndim == 0:
        return float(array) * np.eye(dimension)
    if array.shape == (dimension,):
        return np.diag(array)
    if array.shape == (dimension, dimension):
        return array
    raise ConfigurationError(
        f"expected a scalar, {dimension} values or a {dimension}x{dimension} "
        f"matrix, got shape {array.shape}",
        field,
    )


def per_agent(value: Any, agent_count: int, field: str) -> np.ndarray:
    """Scalar to a constant array, otherwise one value per agent."""
    array = np.array(value, dtype=float)
    if array.ndim == 0:
        return np.full(agent_count, float(array))
    if array.shape == (agent_count,):
        return array
    raise ConfigurationError(
        f"expected a scalar or {agent_count} values", field
    )


def _agent_array(value: Any, shape: tuple, field: str) -> np.ndarray:
    if value is None:
        return np.zeros(shape)
    array = np.array(value, dtype=float)
    if array.shape != shape:
        raise ConfigurationError(f"expected shape {shape}, got {array.shape}", field)
    return array


def build_graph(config: ScenarioConfig) -> SensoryGraph:
    section = config.graph
    count = config.simulation.agent_count
    match section.topology:
        case "ring":
            return SensoryGraph.ring(count, section.weight)
        case "complete":
            return SensoryGraph.from_edges(
                count,
                [
                    (i, j, section.weight)
                    for i in range(count)
                    for j in range(i + 1, count)
                ],
            )
        case _:
            return SensoryGraph.from_edges(
                count,
                [
                    (
                        int(edge[0]),
                        int(edge[1]),
                        edge[2] if len(edge) == 3 else section.weight,
                    )
                    for edge in section.edges
                ],
            )


def _terms(sections) -> tuple:
    return tuple(
        SinusoidTerm(tuple(term.amplitude), term.omega, term.phase)
        for term in sections
    )


def _sinusoids(bias: Sequence[float], terms, dimension: int, field: str):
    bias = tuple(bias) if bias else (0.0,) * dimension
    if len(bias) != dimension:
        raise ConfigurationError(f"expected {dimension} values", field)
    try:
        return SinusoidSum(bias, _terms(terms))
    except ConfigurationError as error:
        raise ConfigurationError(error.message, field) from error


def build_trajectory(config: ScenarioConfig) -> TrajectoryProvider:
    section = config.formation.trajectory
    dimension = config.simulation.dimension
    field = "formation.trajectory"
    provider: TrajectoryProvider
    match section.kind:
        case "constant":
            position = section.position or (0.0,) * dimension
            provider = ConstantTrajectory(position)
        case "lemniscate":
            provider = LemniscateTrajectory(
                section.amplitude_x,
                section.amplitude_y,
                section.omega,
                section.z_amplitude,
                section.z_offset,
            )
        case _:
            provider = _sinusoids(
                section.bias, section.terms, dimension, f"{field}.bias"
            )
    if provider.dimension != dimension:
        raise ConfigurationError(
            f"trajectory of dimension {provider.dimension} in a "
            f"{dimension}-D scenario",
            field,
        )
    return provider


def build_plan(config: ScenarioConfig) -> FormationPlan:
    """Formation plan of a scenario."""
    count = config.simulation.agent_count
    dimension = config.simulation.dimension
    section = config.formation
    offsets = []
    for number, keyframe in enumerate(section.keyframes):
        field = f"formation.keyframes.{number}"
        if keyframe.shape is not None:
            try:
                offsets.append(
                    shape_offsets(
                        keyframe.shape,
                        count,
                        dimension,
                        keyframe.scale,
                        keyframe.height,
                    )
                )
            except ConfigurationError as error:
                raise ConfigurationError(
                    error.message, f"{field}.shape"
                ) from error
        else:
            offsets.append(
                _agent_array(
                    keyframe.offsets, (count, dimension), f"{field}.offsets"
                )
            )
    keyframes = KeyframeSchedule(
        [keyframe.time for keyframe in section.keyframes],
        np.array(offsets),
        section.transition_window,
    )
    oscillations = None
    if section.oscillations:
        masks = np.zeros((len(section.oscillations), count), dtype=bool)
        for number, oscillation in enumerate(section.oscillations):
            if len(oscillation.amplitude) != dimension:
                raise ConfigurationError(
                    f"expected {dimension} values",
                    f"formation.oscillations.{number}.amplitude",
                )
            agents = (
                range(count) if oscillation.agents is None else oscillation.agents
            )
            masks[number, list(agents)] = True
        oscillations = AgentOscillations(
            count,
            np.array([o.amplitude for o in section.oscillations]),
            [o.omega for o in section.oscillations],
            [o.phase for o in section.oscillations],
            [o.phase_step for o in section.oscillations],
            masks,
        )
    return FormationPlan(build_trajectory(config), keyframes, oscillations)


def build_gains(config: ScenarioConfig) -> ControllerGains:
    section = config.gains
    count = config.simulation.agent_count
    dimension = config.simulation.dimension
    kappa_g = per_agent(section.kappa_g, count, "gains.kappa_g")
    upper = (
        kappa_g
        if section.kappa_g_upper is None
        else per_agent(section.kappa_g_upper, count, "gains.kappa_g_upper")
    )
    sigma = np.array(section.sigma_f, dtype=float)
    if sigma.shape == (count, dimension, dimension):
        sigma_f = sigma
    else:
        sigma_f = np.tile(
            covariance_matrix(section.sigma_f, dimension, "gains.sigma_f"),
            (count, 1, 1),
        )
    return ControllerGains(
        kappa_f=section.kappa_f,
        kappa_g=kappa_g,
        sigma_f=sigma_f,
        kappa_g_lower=per_agent(
            section.kappa_g_lower, count, "gains.kappa_g_lower"
        ),
        kappa_g_upper=upper,
    )


def build_tuner(config: ScenarioConfig, gains: ControllerGains) -> GainTuner:
    section = config.tuning
    count = config.simulation.agent_count
    values = {
        name: per_agent(getattr(section, name), count, f"tuning.{name}")
        for name in ("gamma", "sigma_beta", "chi_beta", "alpha")
    }
    params = [
        TuningParams(**{name: float(v[i]) for name, v in values.items()})
        for i in range(count)
    ]
    return GainTuner(
        gains,
        params,
        mode=TuningMode.find_enum(section.mode),
        enabled=section.enabled,
        activation_time=section.activation_time,
    )


def build_attacks(config: ScenarioConfig) -> AttackSchedule:
    dimension = config.simulation.dimension
    specs = []
    for number, section in enumerate(config.attacks):
        field = f"attacks.{number}"
        bias = None
        if section.bias or section.bias_terms:
            bias = _sinusoids(
                section.bias, section.bias_terms, dimension, f"{field}.bias"
            )
        try:
            specs.append(
                AttackSpec(
                    agent=section.agent,
                    mode=AttackMode.find_enum(section.mode),
                    delta=section.delta,
                    bias=bias,
                    c_a=section.c_a,
                    start=section.start,
                    end=section.end_time,
                )
            )
        except ConfigurationError as error:
            name = (error.field or "").split(".")[-1]
            raise ConfigurationError(
                error.message, f"{field}.{name}" if name else field
            ) from error
    return AttackSchedule(specs, config.simulation.agent_count)


def build_measurement_models(config: ScenarioConfig) -> MeasurementModels:
    section = config.estimator
    dimension = config.simulation.dimension
    return MeasurementModels(
        process_cov=covariance_matrix(
            section.process_cov, dimension, "estimator.process_cov"
        ),
        gps_cov=covariance_matrix(section.gps_cov, dimension, "estimator.gps_cov"),
        relative_cov=covariance_matrix(
            section.relative_cov, dimension, "estimator.relative_cov"
        ),
        dt=config.simulation.dt,
        chi=section.chi,
    )


def build_noise(config: ScenarioConfig, seed: int) -> NoiseConfig:
    section = config.noise
    dimension = config.simulation.dimension
    return NoiseConfig(
        **{
            name: covariance_matrix(
                getattr(section, name), dimension, f"noise.{name}"
            )
            for name in (
                "velocity_cov",
                "gps_cov",
                "relative_cov",
                "relative_velocity_cov",
            )
        },
        seed=seed,
    )


def build_metrics_config(config: ScenarioConfig) -> MetricsConfig:
    section = config.metrics
    return MetricsConfig(
        vartheta=section.vartheta,
        alpha=section.alpha,
        recovery_epsilon=section.recovery_epsilon,
        recovery_hold=section.recovery_hold,
    )


def estimator_required(config: ScenarioConfig) -> bool:
    """True when the run steps the resilient estimators.

    The estimator positioning and both gain tuning laws read the estimates.

    Raises:
        ConfigurationError: the estimator is disabled but needed
    """
    needed = (
        config.simulation.positioning == PositioningMode.ESTIMATOR.value
        or config.tuning.enabled
    )
    enabled = config.estimator.enabled
    if enabled is None:
        return needed
    if needed and not enabled:
        raise ConfigurationError(
            "the positioning or the tuning mode needs the estimator",
            "estimator.enabled",
        )
    return enabled


@dataclass(frozen=True, eq=False)
class ScenarioComponents:
    """Domain objects of a scenario.

    The gain tuner and the attack schedule hold per-run state and are
    created by new_tuner and new_attacks.
    """

    config: ScenarioConfig
    graph: SensoryGraph
    plan: FormationPlan
    gains: ControllerGains
    models: MeasurementModels
    initial_covariance: np.ndarray
    metrics: MetricsConfig
    positioning: PositioningMode
    estimator_enabled: bool
    initial_state: SwarmState

    def new_tuner(self) -> GainTuner:
        return build_tuner(self.config, self.gains)

    def new_attacks(self) -> AttackSchedule:
        return build_attacks(self.config)

    def noise(self, seed: int) -> NoiseConfig:
        return build_noise(self.config, seed)


def build_components(config: ScenarioConfig) -> ScenarioComponents:
    """Builds and cross-checks every domain object of a scenario.

    Args:
        config (ScenarioConfig): validated scenario

    Raises:
        ConfigurationError: inconsistent scenario
        DisconnectedGraphError: the sensory graph is not connected

    Returns:
        ScenarioComponents: the domain objects
    """
    count = config.simulation.agent_count
    dimension = config.simulation.dimension
    graph = build_graph(config)
    plan = build_plan(config)
    gains = build_gains(config)
    # validate the stateful parts once
    build_tuner(config, gains)
    build_attacks(config)
    build_noise(config, config.simulation.seed)
    desired = plan.snapshot(0.0)
    initial_state = SwarmState(
        positions=desired.position
        + _agent_array(
            config.initial.position_offsets,
            (count, dimension),
            "initial.position_offsets",
        ),
        velocities=desired.velocity
        + _agent_array(
            config.initial.velocity_offsets,
            (count, dimension),
            "initial.velocity_offsets",
        ),
    )
    initial_covariance = covariance_matrix(
        config.estimator.initial_cov, dimension, "estimator.initial_cov"
    )
    if np.any(np.linalg.eigvalsh(initial_covariance) <= 0):
        raise ConfigurationError(
            "must be positive definite", "estimator.initial_cov"
        )
    return ScenarioComponents(
        config=config,
        graph=graph,
        plan=plan,
        gains=gains,
        models=build_measurement_models(config),
        initial_covariance=initial_covariance,
        metrics=build_metrics_config(config),
        positioning=PositioningMode.find_enum(config.simulation.positioning),
        estimator_enabled=estimator_required(config),
        initial_state=initial_state,
    )
