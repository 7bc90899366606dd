# -*- coding: utf-8 -*-
import math

import pytest

from formation_resilience.exception import ConfigurationError
from formation_resilience.models import ScenarioConfig
from formation_resilience.models.common import dumps
from formation_resilience.models.common import loads
from formation_resilience.models.common import to_builtin
from formation_resilience.models.scenario_models import on_grid


def _document(**tables):
    document = {
        "simulation": {"name": "unit", "agent_count": 4, "duration": 2.0},
        "formation": {"keyframes": [{"time": 0.0, "shape": "polygon"}]},
    }
    document.update(tables)
    return document


def test_defaults():
    config = ScenarioConfig.from_dict(_document())
    assert config.name == "unit"
    assert config.simulation.step_count == 200
    assert config.graph.topology == "ring"
    assert config.estimator.enabled is None
    assert config.attacks == ()


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigurationError) as error:
        ScenarioConfig.from_dict(_document(gains={"kappa": 1.0}))
    assert error.value.field == "gains"
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(_document(plot={}))


def test_types_are_checked():
    with pytest.raises(ConfigurationError) as error:
        ScenarioConfig.from_dict(
            _document(simulation={"agent_count": "six", "duration": 2.0})
        )
    assert error.value.field == "simulation.agent_count"
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(_document(tuning={"enabled": 1}))


def test_nested_errors_carry_the_path():
    attacks = [{"agent": 0, "mode": "additive", "bias": [1.0, 1.0]}, {"agent": 1, "mode": "spoof"}]
    with pytest.raises(ConfigurationError) as error:
        ScenarioConfig.from_dict(_document(attacks=attacks))
    assert error.value.field == "attacks.1.mode"


@pytest.mark.parametrize(
    "tables",
    [
        {"simulation": {"duration": 2.005}},
        {"attacks": [{"agent": 0, "mode": "additive", "bias": [1.0, 1.0], "start": 0.333}]},
        {"metrics": {"attack_time": 1.0001}},
    ],
)
def test_off_grid_times(tables):
    document = _document()
    for name, table in tables.items():
        if isinstance(table, dict):
            document[name] = {**document.get(name, {}), **table}
        else:
            document[name] = table
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(document)


def test_out_of_range_agents():
    with pytest.raises(ConfigurationError) as error:
        ScenarioConfig.from_dict(
            _document(attacks=[{"agent": 4, "mode": "unstable", "c_a": 1.0}])
        )
    assert error.value.field == "attacks.0.agent"
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(
            _document(graph={"topology": "edges", "edges": [[0, 1], [1, 7]]})
        )


def test_keyframes_must_be_increasing():
    keyframes = [{"time": 1.0, "shape": "polygon"}, {"time": 1.0, "shape": "polygon"}]
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(_document(formation={"keyframes": keyframes}))
    with pytest.raises(ConfigurationError):
        ScenarioConfig.from_dict(
            _document(formation={"keyframes": [{"time": 0.0}]})
        )


def test_open_attack_window():
    config = ScenarioConfig.from_dict(
        _document(attacks=[{"agent": 2, "mode": "additive", "bias": [1.0, 0.0], "start": 1.0}])
    )
    assert math.isinf(config.attacks[0].end_time)


def test_on_grid():
    assert on_grid(15.0, 0.01)
    assert on_grid(1500 * 0.01, 0.01)
    assert not on_grid(15.005, 0.01)


def test_json_helpers():
    record = to_builtin({"a": (1, 2), "b": math.inf, "c": {"d": [0.5]}})
    assert record == {"a": [1, 2], "b": None, "c": {"d": [0.5]}}
    assert dumps({"b": 1, "a": 2}, indent=False) == b'{"a":2,"b":1}'
    assert loads(dumps(record)) == record
