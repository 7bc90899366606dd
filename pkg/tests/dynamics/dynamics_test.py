# -*- coding: utf-8 -*-
import numpy as np
import pytest

from formation_resilience.dynamics import AgentState
from formation_resilience.dynamics import measure
from formation_resilience.dynamics import NoiseConfig
from formation_resilience.dynamics import step
from formation_resilience.dynamics import SwarmState
from formation_resilience.exception import ConfigurationError
from formation_resilience.exception import SimulationDivergedError
from formation_resilience.network import SensoryGraph


def _swarm(positions, velocities=None) -> SwarmState:
    positions = np.array(positions, dtype=float)
    if velocities is None:
        velocities = np.zeros_like(positions)
    return SwarmState(positions, np.array(velocities, dtype=float))


def test_step_is_exact_without_acceleration():
    state = _swarm([[0.0, 0.0], [1.0, 2.0]], [[1.0, -1.0], [0.5, 0.0]])
    moved = step(state, np.zeros((2, 2)), 0.01)
    assert np.allclose(
        moved.positions, state.positions + 0.01 * state.velocities, atol=1e-15
    )
    assert np.array_equal(moved.velocities, state.velocities)


def test_uniform_acceleration():
    state = _swarm([[0.0, 0.0, 0.0]])
    acceleration = np.array([[1.0, -2.0, 0.5]])
    for k in range(100):
        state = step(state, acceleration, 0.01, k * 0.01)
    assert np.allclose(state.positions, 0.5 * acceleration, atol=1e-9)
    assert np.allclose(state.velocities, acceleration, atol=1e-12)


def test_step_rejects_non_finite_values():
    state = _swarm([[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    inputs = np.zeros((3, 2))
    inputs[1, 0] = np.inf
    with pytest.raises(SimulationDivergedError) as error:
        step(state, inputs, 0.01, 2.5)
    assert error.value.agent == 1
    with pytest.raises(SimulationDivergedError):
        step(_swarm([[np.nan, 0.0]]), np.zeros((1, 2)), 0.01)
    with pytest.raises(ValueError):
        step(state, np.zeros((3, 2)), 0.0)


def test_swarm_state_accessors():
    state = SwarmState.from_agents(
        [
            AgentState(np.array([0.0, 1.0]), np.array([1.0, 0.0])),
            AgentState(np.array([2.0, 3.0]), np.array([0.0, 1.0])),
        ]
    )
    assert state.agent_count == 2
    assert state.dimension == 2
    assert np.array_equal(state.agent(1).position, [2.0, 3.0])
    assert [a.velocity.tolist() for a in state] == [[1.0, 0.0], [0.0, 1.0]]
    with pytest.raises(ValueError):
        SwarmState(np.zeros((2, 2)), np.zeros((2, 3)))


def test_noiseless_measurements():
    graph = SensoryGraph.ring(3)
    state = _swarm([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])
    measurements = measure(state, graph, NoiseConfig.noiseless(2), None)
    assert np.array_equal(measurements[0].relative_displacements[1], [-1.0, 0.0])
    assert measurements[0].distance(1) == 1.0
    for i, m in enumerate(measurements):
        assert sorted(m.relative_displacements) == list(graph.neighbors(i))
        assert np.array_equal(m.global_position, state.positions[i])
        assert np.array_equal(m.velocity, state.velocities[i])
        for j, displacement in m.relative_displacements.items():
            mutual = measurements[j].relative_displacements[i]
            assert np.array_equal(displacement + mutual, np.zeros(2))
            assert np.array_equal(
                m.relative_velocities[j],
                -measurements[j].relative_velocities[i],
            )


def test_noisy_measurements_are_reproducible():
    graph = SensoryGraph.ring(4)
    state = _swarm(np.arange(8.0).reshape(4, 2))
    covariance = 1e-2 * np.eye(2)
    noise = NoiseConfig(covariance, covariance, covariance, covariance, seed=11)
    first = measure(state, graph, noise, noise.rng())
    second = measure(state, graph, noise, noise.rng())
    for a, b in zip(first, second):
        assert np.array_equal(a.global_position, b.global_position)
        assert np.array_equal(a.velocity, b.velocity)
        for j in a.relative_displacements:
            assert np.array_equal(
                a.relative_displacements[j], b.relative_displacements[j]
            )
    assert not np.array_equal(first[0].global_position, state.positions[0])


def test_noise_statistics():
    graph = SensoryGraph.ring(3)
    state = _swarm(np.zeros((3, 2)))
    covariance = np.array([[4e-2, 1e-2], [1e-2, 1e-2]])
    zeros = np.zeros((2, 2))
    noise = NoiseConfig(zeros, covariance, zeros, zeros, seed=5)
    rng = noise.rng()
    samples = np.array(
        [
            m.global_position
            for _ in range(4000)
            for m in measure(state, graph, noise, rng)
        ]
    )
    assert np.allclose(np.cov(samples.T), covariance, atol=3e-3)


def test_covariance_must_be_positive_semidefinite():
    zeros = np.zeros((2, 2))
    with pytest.raises(ConfigurationError):
        NoiseConfig(-np.eye(2), zeros, zeros, zeros)
    with pytest.raises(ConfigurationError):
        NoiseConfig(np.array([[1.0, 0.5], [0.0, 1.0]]), zeros, zeros, zeros)
    assert NoiseConfig.noiseless(3).is_noiseless
