# -*- coding: utf-8 -*-
import math
import os
import shutil
from os.path import abspath
from os.path import dirname

import pytest

from formation_resilience.exception import ConfigurationError
from formation_resilience.models import loads
from formation_resilience.scenario import apply_overrides
from formation_resilience.scenario import load_scenario
from formation_resilience.scenario import load_sweep
from formation_resilience.scenario import run_seeds
from formation_resilience.scenario import sweep
from formation_resilience.scenario import write_sweep

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


def test_run_seeds():
    seeds = run_seeds(0, 4)
    assert seeds == run_seeds(0, 4)
    assert len(set(seeds)) == 4
    assert run_seeds(1, 4) != seeds
    assert run_seeds(0, 2) == seeds[:2]


def test_load_bundled_sweeps():
    plan = load_sweep("sweep_attacked_agents")
    assert plan.name == "sweep_attacked_agents"
    assert plan.base.name == "sim_gain_tuning"
    assert len(plan.overrides) == 5
    assert [len(o["attacks"]) for o in plan.overrides] == [1, 2, 3, 4, 5]
    control = load_sweep("sweep_control_parameters")
    assert "nominal" in control.labels
    for overrides in control.overrides:
        apply_overrides(control.base, overrides)


def test_invalid_sweep_file():
    path = os.path.join(result_dir, "bad.toml")
    with open(path, "w", encoding="utf-8") as file:
        file.write('base = "sim_no_attack"\nruns = 3\n')
    with pytest.raises(ConfigurationError):
        load_sweep(path)


def test_more_attacked_agents_degrade_more():
    plan = load_sweep("sweep_attacked_agents")
    outcomes = sweep(plan.base, plan.overrides, plan.labels)
    assert [o.index for o in outcomes] == list(range(5))
    assert all(o.succeeded for o in outcomes)
    minima = [o.summary.min_index for o in outcomes]
    assert all(b < a for a, b in zip(minima, minima[1:]))
    restorations = [o.summary.restoration for o in outcomes]
    delays = [
        math.inf
        if o.summary.recovery_time is None
        else o.summary.recovery_time - o.summary.attack_time
        for o in outcomes
    ]
    assert all(b >= a for a, b in zip(restorations, restorations[1:]))
    assert all(b >= a for a, b in zip(delays, delays[1:]))
    # a single attacked agent stays within the recovery band
    assert restorations[0] == 0.0
    assert restorations[-1] > 0.0
    path = os.path.join(result_dir, "sweep.json")
    write_sweep(path, plan.name, outcomes)
    with open(path, "rb") as file:
        document = loads(file.read())
    assert document["sweep"] == "sweep_attacked_agents"
    assert document["runs"][0]["summary"]["restoration"] == 0.0
    assert len(document["runs"]) == 5


def test_unstable_boundary():
    plan = load_sweep("sweep_unstable_boundary")
    outcomes = sweep(plan.base, plan.overrides, plan.labels)
    slow, fast = outcomes
    assert slow.label == "c_a_0.25" and slow.succeeded
    assert fast.label == "c_a_5" and not fast.succeeded
    assert fast.error_type == "SimulationDivergedError"
    assert fast.summary is None


def test_failed_override_is_collected():
    base = apply_overrides(
        load_scenario("sim_no_attack"), {"simulation.duration": 1.0}
    )
    outcomes = sweep(base, [{"gains.kappa_f": -1.0}], ["negative"])
    assert outcomes[0].error_type == "ConfigurationError"
    assert outcomes[0].to_record()["summary"] is None


def test_empty_overrides_run_the_base_once():
    base = apply_overrides(
        load_scenario("sim_attack_additive"),
        {"simulation.duration": 16.0},
    )
    outcomes = sweep(base, [], seed=3)
    assert len(outcomes) == 1
    assert outcomes[0].seed == run_seeds(3, 1)[0]
    assert outcomes[0].summary.seed == outcomes[0].seed
    assert outcomes[0].summary.attack_time == 15.0
