# -*- coding: utf-8 -*-
import os
import shutil
from os.path import abspath
from os.path import dirname

import numpy as np
import pytest

from formation_resilience.exception import OutputError
from formation_resilience.metrics import MetricsSummary
from formation_resilience.models import loads
from formation_resilience.scenario import apply_overrides
from formation_resilience.scenario import column_names
from formation_resilience.scenario import load_scenario
from formation_resilience.scenario import read_csv
from formation_resilience.scenario import run
from formation_resilience.scenario import write_csv
from formation_resilience.scenario import write_series
from formation_resilience.scenario import write_summary

root_dir = os.path.join(dirname(dirname(abspath(__file__))), "..")
test_dir = os.path.join(root_dir, "tests")
result_dir = os.path.join(test_dir, "results")

ARRAYS = (
    "times",
    "index",
    "positions",
    "velocities",
    "inputs",
    "estimates",
    "betas",
    "kl_divergences",
    "kappa_g",
    "global_errors",
    "local_errors",
    "lyapunov",
)


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


def _short_run():
    config = apply_overrides(
        load_scenario("sim_cl_recovery"), {"simulation.duration": 0.5}
    )
    return run(config)


def test_column_names():
    names = column_names(2, 3)
    assert names[:5] == ["t", "index", "a0_pos_x", "a0_pos_y", "a0_pos_z"]
    assert "a1_mode" in names
    assert names[-1] == "a1_lyapunov"


def test_csv_round_trip():
    run_log = _short_run()
    assert run_log.record_count == 51
    assert run_log.agent_count == 6
    assert run_log.dimension == 2
    path = os.path.join(result_dir, "run.csv")
    write_csv(path, run_log)
    restored = read_csv(path)
    assert restored.name == "sim_cl_recovery"
    assert restored.config_hash == run_log.config_hash
    assert restored.seed == run_log.seed
    for name in ARRAYS:
        assert np.array_equal(getattr(restored, name), getattr(run_log, name)), name
    assert restored.modes.tolist() == run_log.modes.tolist()
    assert set(run_log.modes[0]) == {"initial"}
    assert set(run_log.modes[-1]) == {"gps"}


def test_series_and_summary():
    run_log = _short_run()
    written = write_series(os.path.join(result_dir, "series"), run_log)
    assert sorted(os.path.basename(p) for p in written) == [
        "beta.csv",
        "index.csv",
        "kappa_g.csv",
        "kl_divergence.csv",
        "tracking_error.csv",
        "trajectory.csv",
    ]
    with open(written[0], encoding="utf-8") as file:
        lines = file.read().splitlines()
    assert lines[0] == "t,index"
    assert len(lines) == 52
    path = os.path.join(result_dir, "summary.json")
    summary = MetricsSummary(float("inf"), None, 0.5, 0.6, config_hash="h")
    write_summary(path, run_log, summary, {"extra": [1.0]})
    with open(path, "rb") as file:
        document = loads(file.read())
    assert document["records"] == 51
    assert document["restoration"] is None
    assert document["recovered"] is False
    assert document["extra"] == [1.0]


def test_unreadable_logs():
    with pytest.raises(OutputError):
        read_csv(os.path.join(result_dir, "missing.csv"))
    path = os.path.join(result_dir, "bad.csv")
    with open(path, "w", encoding="utf-8") as file:
        file.write("# seed=0\nt,index,what\n0.0,1.0,2.0\n")
    with pytest.raises(OutputError):
        read_csv(path)
