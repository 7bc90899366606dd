# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    scenario_models

Description:
    Schema of the scenario documents. Each TOML table maps to a frozen
    dataclass; arrays are stored as tuples and turned into numpy arrays and
    domain objects by the scenario builders.

Classes

.. uml::

    class ScenarioConfig {
        +SimulationSection simulation
        +GraphSection graph
        +FormationSection formation
        +InitialSection initial
        +GainsSection gains
        +TuningSection tuning
        +Tuple[AttackSection] attacks
        +EstimatorSection estimator
        +NoiseSection noise
        +MetricsSection metrics
        +OutputSection output
    }
    FormationSection --> TrajectorySection
    FormationSection --> KeyframeSection
    FormationSection --> OscillationSection
    TrajectorySection --> SinusoidSection
    AttackSection --> SinusoidSection
    ScenarioConfig --> FormationSection
    ScenarioConfig --> AttackSection
"""
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Iterator
from typing import Optional
from typing import Tuple

from ..exception import ConfigurationError
from .common import ConfigModel

logger = logging.getLogger(__name__)

GRID_TOLERANCE = 1e-9

POSITIONING_MODES = ("raw", "estimator")
TOPOLOGIES = ("ring", "complete", "edges")
TRAJECTORY_KINDS = ("constant", "lemniscate", "sinusoids")
SHAPES = ("hexagon", "polygon", "rectangle", "triangle")
ATTACK_MODES = ("none", "additive", "hybrid", "unstable")
TUNING_MODES = ("beta", "error")


def _choice(value: str, choices: Tuple[str, ...], name: str):
    if value not in choices:
        raise ConfigurationError(f"expected one of {list(choices)}", name)


@dataclass(frozen=True)
class SimulationSection(ConfigModel):
    name: str = "scenario"
    description: str = ""
    dimension: int = 2
    agent_count: int = 6
    dt: float = 0.01
    duration: float = 40.0
    seed: int = 0
    positioning: str = "raw"
    divergence_bound: float = 1e6

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ConfigurationError("dimension must be 2 or 3", "dimension")
        if self.agent_count < 3:
            raise ConfigurationError("at least 3 agents", "agent_count")
        if self.dt <= 0:
            raise ConfigurationError("dt must be > 0", "dt")
        if self.duration <= 0:
            raise ConfigurationError("duration must be > 0", "duration")
        if self.seed < 0:
            raise ConfigurationError("seed must be >= 0", "seed")
        _choice(self.positioning, POSITIONING_MODES, "positioning")
        if self.divergence_bound <= 0:
            raise ConfigurationError(
                "divergence_bound must be > 0", "divergence_bound"
            )

    @property
    def step_count(self) -> int:
        return int(round(self.duration / self.dt))


@dataclass(frozen=True)
class GraphSection(ConfigModel):
    """Sensory graph: a ring, a complete graph or an edge list.

    Edges read [i, j] or [i, j, weight]; weight is the default weight.
    """

    topology: str = "ring"
    weight: float = 1.0
    edges: Tuple[Tuple[float, ...], ...] = ()

    def __post_init__(self):
        _choice(self.topology, TOPOLOGIES, "topology")
        if self.weight <= 0:
            raise ConfigurationError("weight must be > 0", "weight")
        if self.topology == "edges" and not self.edges:
            raise ConfigurationError("an edge list is required", "edges")
        for number, edge in enumerate(self.edges):
            if len(edge) not in (2, 3):
                raise ConfigurationError(
                    "an edge is [i, j] or [i, j, weight]", f"edges.{number}"
                )
            if any(float(v) != int(v) or v < 0 for v in edge[:2]):
                raise ConfigurationError(
                    "agent indices must be integers >= 0", f"edges.{number}"
                )


@dataclass(frozen=True)
class SinusoidSection(ConfigModel):
    amplitude: Tuple[float, ...]
    omega: float
    phase: float = 0.0


@dataclass(frozen=True)
class TrajectorySection(ConfigModel):
    kind: str = "constant"
    position: Tuple[float, ...] = ()
    amplitude_x: float = 0.0
    amplitude_y: float = 0.0
    omega: float = 0.0
    z_amplitude: Optional[float] = None
    z_offset: float = 0.0
    bias: Tuple[float, ...] = ()
    terms: Tuple[SinusoidSection, ...] = ()

    def __post_init__(self):
        _choice(self.kind, TRAJECTORY_KINDS, "kind")
        if self.kind == "lemniscate" and self.omega <= 0:
            raise ConfigurationError("omega must be > 0", "omega")


@dataclass(frozen=True)
class KeyframeSection(ConfigModel):
    """Formation shape reached at a time.

    Either a named shape scaled by scale (with a constant height in 3-D)
    or explicit per-agent offsets.
    """

    time: float
    shape: Optional[str] = None
    offsets: Optional[Tuple[Tuple[float, ...], ...]] = None
    scale: float = 1.0
    height: float = 0.0

    def __post_init__(self):
        if (self.shape is None) == (self.offsets is None):
            raise ConfigurationError(
                "give either a shape or offsets", "shape"
            )
        if self.shape is not None:
            _choice(self.shape, SHAPES, "shape")
        if self.time < 0:
            raise ConfigurationError("time must be >= 0", "time")


@dataclass(frozen=True)
class OscillationSection(ConfigModel):
    """amplitude sin(omega t + phase + agent_number phase_step)."""

    amplitude: Tuple[float, ...]
    omega: float
    phase: float = 0.0
    phase_step: float = 0.0
    agents: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class FormationSection(ConfigModel):
    transition_window: float = 5.0
    trajectory: TrajectorySection = field(default_factory=TrajectorySection)
    keyframes: Tuple[KeyframeSection, ...] = ()
    oscillations: Tuple[OscillationSection, ...] = ()

    def __post_init__(self):
        if self.transition_window <= 0:
            raise ConfigurationError(
                "transition_window must be > 0", "transition_window"
            )
        if not self.keyframes:
            raise ConfigurationError("at least one keyframe", "keyframes")
        times = [keyframe.time for keyframe in self.keyframes]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigurationError(
                "keyframe times must be strictly increasing", "keyframes"
            )


@dataclass(frozen=True)
class InitialSection(ConfigModel):
    """Deviations of the initial states from the formation, arrays (N, n)."""

    position_offsets: Optional[Tuple[Tuple[float, ...], ...]] = None
    velocity_offsets: Optional[Tuple[Tuple[float, ...], ...]] = None


@dataclass(frozen=True)
class GainsSection(ConfigModel):
    """Control gains; kappa_g and its bounds are scalars or per-agent arrays,
    sigma_f a scalar, a diagonal or a matrix shared by all agents."""

    kappa_f: float = 2.0
    kappa_g: Any = 2.0
    sigma_f: Any = 1.0
    kappa_g_lower: Any = 0.0
    kappa_g_upper: Any = None


@dataclass(frozen=True)
class TuningSection(ConfigModel):
    enabled: bool = False
    mode: str = "beta"
    activation_time: float = 0.0
    gamma: Any = 1.0
    sigma_beta: Any = 3.0
    chi_beta: Any = 0.5
    alpha: Any = 2.0

    def __post_init__(self):
        _choice(self.mode, TUNING_MODES, "mode")
        if self.activation_time < 0:
            raise ConfigurationError(
                "activation_time must be >= 0", "activation_time"
            )


@dataclass(frozen=True)
class AttackSection(ConfigModel):
    """Deception attack; end is open when absent."""

    agent: int
    mode: str
    delta: float = 1.0
    bias: Tuple[float, ...] = ()
    bias_terms: Tuple[SinusoidSection, ...] = ()
    c_a: float = 0.0
    start: float = 0.0
    end: Optional[float] = None

    def __post_init__(self):
        _choice(self.mode, ATTACK_MODES, "mode")
        if self.agent < 0:
            raise ConfigurationError("agent must be >= 0", "agent")

    @property
    def end_time(self) -> float:
        return math.inf if self.end is None else self.end


@dataclass(frozen=True)
class EstimatorSection(ConfigModel):
    """Resilient estimator. Covariances are scalars, diagonals or matrices.

    enabled = None runs the estimator only when the run needs it.
    """

    enabled: Optional[bool] = None
    process_cov: Any = 1e-2
    gps_cov: Any = 1e-4
    relative_cov: Any = 1e-4
    initial_cov: Any = 1e-4
    chi: float = 5.0

    def __post_init__(self):
        if self.chi <= 0:
            raise ConfigurationError("chi must be > 0", "chi")


@dataclass(frozen=True)
class NoiseSection(ConfigModel):
    velocity_cov: Any = 0.0
    gps_cov: Any = 0.0
    relative_cov: Any = 0.0
    relative_velocity_cov: Any = 0.0


@dataclass(frozen=True)
class MetricsSection(ConfigModel):
    """Metric constants; attack_time defaults to the first attack onset."""

    vartheta: float = 10.0
    alpha: float = 5.0
    recovery_epsilon: float = 0.01
    recovery_hold: float = 1.0
    attack_time: Optional[float] = None
    end_time: Optional[float] = None
    compare_attack_free: bool = False


@dataclass(frozen=True)
class OutputSection(ConfigModel):
    directory: str = "results"
    prefix: Optional[str] = None
    series: bool = False


@dataclass(frozen=True)
class ScenarioConfig(ConfigModel):
    """A complete scenario."""

    simulation: SimulationSection = field(default_factory=SimulationSection)
    graph: GraphSection = field(default_factory=GraphSection)
    formation: FormationSection = field(
        default_factory=lambda: FormationSection(
            keyframes=(KeyframeSection(time=0.0, shape="hexagon"),)
        )
    )
    initial: InitialSection = field(default_factory=InitialSection)
    gains: GainsSection = field(default_factory=GainsSection)
    tuning: TuningSection = field(default_factory=TuningSection)
    attacks: Tuple[AttackSection, ...] = ()
    estimator: EstimatorSection = field(default_factory=EstimatorSection)
    noise: NoiseSection = field(default_factory=NoiseSection)
    metrics: MetricsSection = field(default_factory=MetricsSection)
    output: OutputSection = field(default_factory=OutputSection)

    def __post_init__(self):
        count = self.simulation.agent_count
        for number, attack in enumerate(self.attacks):
            if attack.agent >= count:
                raise ConfigurationError(
                    f"agent {attack.agent} does not exist",
                    f"attacks.{number}.agent",
                )
        for number, edge in enumerate(self.graph.edges):
            if max(int(edge[0]), int(edge[1])) >= count:
                raise ConfigurationError(
                    "agent index out of range", f"graph.edges.{number}"
                )
        for number, oscillation in enumerate(self.formation.oscillations):
            if any(not 0 <= a < count for a in oscillation.agents or ()):
                raise ConfigurationError(
                    "agent index out of range",
                    f"formation.oscillations.{number}.agents",
                )
        for name, value in self.event_times():
            if not on_grid(value, self.simulation.dt):
                raise ConfigurationError(
                    f"{value} is not a multiple of dt={self.simulation.dt}",
                    name,
                )

    def event_times(self) -> Iterator[Tuple[str, float]]:
        """Times that must fall on the simulation grid."""
        yield "simulation.duration", self.simulation.duration
        for number, keyframe in enumerate(self.formation.keyframes):
            yield f"formation.keyframes.{number}.time", keyframe.time
        if self.tuning.enabled:
            yield "tuning.activation_time", self.tuning.activation_time
        for number, attack in enumerate(self.attacks):
            yield f"attacks.{number}.start", attack.start
            if attack.end is not None:
                yield f"attacks.{number}.end", attack.end
        if self.metrics.attack_time is not None:
            yield "metrics.attack_time", self.metrics.attack_time
        if self.metrics.end_time is not None:
            yield "metrics.end_time", self.metrics.end_time

    @property
    def name(self) -> str:
        return self.simulation.name

    def semantic_document(self) -> dict:
        """Every table but the output one."""
        document = dict(self.__dict__)
        document.pop("output", None)
        return document


def on_grid(value: float, dt: float) -> bool:
    """True when value is a multiple of dt within the grid tolerance."""
    return abs(value - round(value / dt) * dt) <= GRID_TOLERANCE
