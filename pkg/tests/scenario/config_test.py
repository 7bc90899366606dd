# -*- coding: utf-8 -*-
import os
import shutil
from os.path import abspath
from os.path import dirname

import numpy as np
import pytest

from formation_resilience.estimation import EstimatorMode
from formation_resilience.exception import ConfigurationError
from formation_resilience.exception import DisconnectedGraphError
from formation_resilience.exception import OutputError
from formation_resilience.models import ScenarioConfig
from formation_resilience.scenario import apply_overrides
from formation_resilience.scenario import build_components
from formation_resilience.scenario import bundled_scenarios
from formation_resilience.scenario import bundled_sweeps
from formation_resilience.scenario import config_hash
from formation_resilience.scenario import load_scenario
from formation_resilience.scenario.config import covariance_matrix
from formation_resilience.scenario.config import estimator_required
from formation_resilience.scenario.config import per_agent
from formation_resilience.scenario.config import set_path

root_dir = os.path.join(dirname(dirname(abspath(__file__))), "..")
test_dir = os.path.join(root_dir, "tests")
result_dir = os.path.join(test_dir, "results")


@pytest.fixture(autouse=True)
def my_setup_and_tear_down():
    # SETUP
    setup_directory()
    yield
    # TEARDOWN
    teardown_directory()


def setup_directory():
    os.makedirs(result_dir, exist_ok=True)


def teardown_directory():
    shutil.rmtree(result_dir)


def _write(name: str, content: str) -> str:
    path = os.path.join(result_dir, name)
    with open(path, "w", encoding="utf-8") as file:
        file.write(content)
    return path


def test_bundled_scenarios_load_and_build():
    names = bundled_scenarios()
    assert "sim_no_attack" in names
    assert "exp_lemniscate_resilient" in names
    assert len(names) == 15
    for name in names:
        config = load_scenario(name)
        assert config.name == name
        components = build_components(config)
        assert components.graph.agent_count == config.simulation.agent_count
        assert components.initial_state.dimension == config.simulation.dimension
    assert bundled_sweeps() == [
        "sweep_attacked_agents",
        "sweep_control_parameters",
        "sweep_unstable_boundary",
    ]


def test_load_by_path():
    path = _write(
        "mini.toml",
        """
[simulation]
name = "mini"
agent_count = 3
duration = 1.0

[[formation.keyframes]]
time = 0.0
shape = "triangle"
""",
    )
    config = load_scenario(path)
    assert config.name == "mini"
    assert config.simulation.agent_count == 3


def test_load_errors():
    with pytest.raises(OutputError):
        load_scenario(os.path.join(result_dir, "missing.toml"))
    with pytest.raises(ConfigurationError):
        load_scenario(_write("broken.toml", "[simulation\nname = 1"))


def test_hash_ignores_the_output_table():
    config = load_scenario("sim_no_attack")
    moved = apply_overrides(config, {"output.directory": "elsewhere"})
    assert config_hash(moved) == config_hash(config)
    changed = apply_overrides(config, {"gains.kappa_f": 1.0})
    assert config_hash(changed) != config_hash(config)
    assert len(config_hash(config)) == 64


def test_overrides():
    config = load_scenario("sim_attack_unstable")
    overridden = apply_overrides(
        config, {"attacks.0.c_a": 0.25, "gains.kappa_g": [1.0, 2.0, 2.0, 2.0, 2.0, 2.0]}
    )
    assert overridden.attacks[0].c_a == 0.25
    assert overridden.gains.kappa_g[0] == 1.0
    assert config.attacks[0].c_a == 5.0
    assert apply_overrides(config, {}) is config
    with pytest.raises(ConfigurationError):
        apply_overrides(config, {"attacks.3.c_a": 1.0})
    with pytest.raises(ConfigurationError):
        apply_overrides(config, {"gains.kappa": 1.0})
    with pytest.raises(ConfigurationError):
        apply_overrides(config, {"attacks.0.start": 12.001})


def test_set_path():
    document = {"a": {"b": [1, {"c": 2}]}}
    set_path(document, "a.b.1.c", 3)
    set_path(document, "a.b.0", 5)
    assert document == {"a": {"b": [5, {"c": 3}]}}
    with pytest.raises(ConfigurationError):
        set_path(document, "a.x.y", 1)


def test_estimator_is_run_when_needed():
    raw = load_scenario("sim_attack_additive")
    assert not estimator_required(raw)
    assert build_components(raw).estimator_enabled is False
    forced = apply_overrides(raw, {"estimator.enabled": True})
    assert estimator_required(forced)
    resilient = load_scenario("sim_cl_recovery")
    assert estimator_required(resilient)
    with pytest.raises(ConfigurationError) as error:
        estimator_required(apply_overrides(resilient, {"estimator.enabled": False}))
    assert error.value.field == "estimator.enabled"
    tuned = load_scenario("sim_error_gain_tuning")
    assert tuned.simulation.positioning == "raw"
    assert estimator_required(tuned)
    assert EstimatorMode.find_enum("disabled") is EstimatorMode.DISABLED


def test_disconnected_graph():
    config = ScenarioConfig.from_dict(
        {
            "simulation": {"agent_count": 4, "duration": 1.0},
            "graph": {"topology": "edges", "edges": [[0, 1], [2, 3]]},
            "formation": {"keyframes": [{"time": 0.0, "shape": "polygon"}]},
        }
    )
    with pytest.raises(DisconnectedGraphError):
        build_components(config)


def test_shape_requires_the_right_agent_count():
    config = ScenarioConfig.from_dict(
        {
            "simulation": {"agent_count": 5, "duration": 1.0},
            "formation": {"keyframes": [{"time": 0.0, "shape": "hexagon"}]},
        }
    )
    with pytest.raises(ConfigurationError) as error:
        build_components(config)
    assert error.value.field == "formation.keyframes.0.shape"


def test_covariance_helpers():
    assert np.array_equal(covariance_matrix(2.0, 3, "x"), 2.0 * np.eye(3))
    assert np.array_equal(covariance_matrix([1.0, 2.0], 2, "x"), np.diag([1.0, 2.0]))
    matrix = [[1.0, 0.1], [0.1, 1.0]]
    assert np.array_equal(covariance_matrix(matrix, 2, "x"), matrix)
    with pytest.raises(ConfigurationError):
        covariance_matrix([1.0, 2.0, 3.0], 2, "x")
    assert np.array_equal(per_agent(1.5, 3, "x"), [1.5, 1.5, 1.5])
    with pytest.raises(ConfigurationError):
        per_agent([1.0, 2.0], 3, "x")
