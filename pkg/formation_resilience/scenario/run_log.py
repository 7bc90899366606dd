# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    run_log

Description:
    Per-step record of a run and its files. The run CSV starts with comment
    lines carrying the scenario name, the configuration hash and the seed,
    followed by a header and one row per step::

        t, index,
        a{i}_pos_{x,y,z}, a{i}_vel_*, a{i}_u_*, a{i}_xhat_*,
        a{i}_beta, a{i}_dkl, a{i}_kappa_g, a{i}_mode,
        a{i}_err_global, a{i}_err_local, a{i}_lyapunov     for each agent i

    Agents are numbered from 0 and floats are written with repr so that a
    file reproduces the arrays exactly.

Classes:
    RunLog
    RunLogRecorder

Author:
    formation-resilience developers
"""
import csv
import logging
import os
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from fastnumbers import float as ffloat

from ..exception import OutputError
from ..metrics import MetricsSummary
from ..models import dumps

logger = logging.getLogger(__name__)

AXES = ("x", "y", "z")
VECTOR_FIELDS = ("pos", "vel", "u", "xhat")
SCALAR_FIELDS = (
    "beta",
    "dkl",
    "kappa_g",
    "mode",
    "err_global",
    "err_local",
    "lyapunov",
)
COMMENT = "#"


def column_names(agent_count: int, dimension: int) -> List[str]:
    """Header of the run CSV."""
    names = ["t", "index"]
    for i in range(agent_count):
        for name in VECTOR_FIELDS:
            names.extend(f"a{i}_{name}_{axis}" for axis in AXES[:dimension])
        names.extend(f"a{i}_{name}" for name in SCALAR_FIELDS)
    return names


@dataclass(frozen=True, eq=False)
class RunLog:
    """Arrays of a run, K records of N agents in dimension n.

    Attributes:
        name (str): scenario name
        config_hash (str): hash of the scenario
        seed (int): seed of the run
        times (np.ndarray): (K,)
        index (np.ndarray): performance index (K,)
        positions (np.ndarray): (K, N, n)
        velocities (np.ndarray): (K, N, n)
        inputs (np.ndarray): (K, N, n)
        estimates (np.ndarray): positioning estimates (K, N, n)
        betas (np.ndarray): (K, N)
        kl_divergences (np.ndarray): (K, N)
        kappa_g (np.ndarray): (K, N)
        modes (np.ndarray): estimator modes (K, N), strings
        global_errors (np.ndarray): ||x~_i|| (K, N)
        local_errors (np.ndarray): ||ebar_i|| (K, N)
        lyapunov (np.ndarray): V_i (K, N)
    """

    name: str
    config_hash: str
    seed: int
    times: np.ndarray
    index: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    inputs: np.ndarray
    estimates: np.ndarray
    betas: np.ndarray
    kl_divergences: np.ndarray
    kappa_g: np.ndarray
    modes: np.ndarray
    global_errors: np.ndarray
    local_errors: np.ndarray
    lyapunov: np.ndarray

    @property
    def record_count(self) -> int:
        return self.times.size

    @property
    def agent_count(self) -> int:
        return self.positions.shape[1]

    @property
    def dimension(self) -> int:
        return self.positions.shape[2]

    def rows(self):
        """Rows of the run CSV as lists of strings."""
        for k in range(self.record_count):
            row = [repr(float(self.times[k])), repr(float(self.index[k]))]
            for i in range(self.agent_count):
                for array in (
                    self.positions,
                    self.velocities,
                    self.inputs,
                    self.estimates,
                ):
                    row.extend(repr(v) for v in array[k, i].tolist())
                row.extend(
                    [
                        repr(float(self.betas[k, i])),
                        repr(float(self.kl_divergences[k, i])),
                        repr(float(self.kappa_g[k, i])),
                        str(self.modes[k, i]),
                        repr(float(self.global_errors[k, i])),
                        repr(float(self.local_errors[k, i])),
                        repr(float(self.lyapunov[k, i])),
                    ]
                )
            yield row


class RunLogRecorder:
    """Preallocated arrays filled step by step.

    Args:
        name (str): scenario name
        config_hash (str): hash of the scenario
        seed (int): seed of the run
        record_count (int): K
        agent_count (int): N
        dimension (int): n
    """

    def __init__(
        self,
        name: str,
        config_hash: str,
        seed: int,
        record_count: int,
        agent_count: int,
        dimension: int,
    ):
        self.__header = (name, config_hash, seed)
        self.__count = 0
        vector = (record_count, agent_count, dimension)
        scalar = (record_count, agent_count)
        self.__arrays: Dict[str, np.ndarray] = {
            "times": np.zeros(record_count),
            "index": np.zeros(record_count),
            "positions": np.zeros(vector),
            "velocities": np.zeros(vector),
            "inputs": np.zeros(vector),
            "estimates": np.zeros(vector),
            "betas": np.zeros(scalar),
            "kl_divergences": np.zeros(scalar),
            "kappa_g": np.zeros(scalar),
            "modes": np.empty(scalar, dtype=object),
            "global_errors": np.zeros(scalar),
            "local_errors": np.zeros(scalar),
            "lyapunov": np.zeros(scalar),
        }

    @property
    def count(self) -> int:
        return self.__count

    def record(self, **values):
        """Stores the values of the next step, keyed like the RunLog fields."""
        k = self.__count
        for name, value in values.items():
            self.__arrays[name][k] = value
        self.__count += 1

    def finish(self) -> RunLog:
        name, config_hash, seed = self.__header
        arrays = {
            key: array[: self.__count] for key, array in self.__arrays.items()
        }
        return RunLog(name=name, config_hash=config_hash, seed=seed, **arrays)


def _makedirs(path: str):
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as error:
        raise OutputError(f"cannot create {directory}: {error}") from error


def write_csv(path: str, run_log: RunLog):
    """Writes the run CSV.

    Raises:
        OutputError: the file cannot be written
    """
    _makedirs(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as file:
            file.write(f"{COMMENT} scenario={run_log.name}\n")
            file.write(f"{COMMENT} config_hash={run_log.config_hash}\n")
            file.write(f"{COMMENT} seed={run_log.seed}\n")
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(
                column_names(run_log.agent_count, run_log.dimension)
            )
            writer.writerows(run_log.rows())
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error}") from error
    logger.info(f"run log written in {path}")


def _parse_header(lines: Sequence[str]) -> Dict[str, str]:
    header = {}
    for line in lines:
        key, _, value = line.lstrip(COMMENT).strip().partition("=")
        header[key] = value
    return header


def _layout(columns: Sequence[str]) -> Tuple[int, int]:
    """Agent count and dimension from a CSV header."""
    agents = {name.split("_", 1)[0] for name in columns[2:]}
    agent_count = len(agents)
    dimension = sum(1 for name in columns if name.startswith("a0_pos_"))
    if (
        list(columns) != column_names(agent_count, dimension)
        or agent_count == 0
    ):
        raise OutputError("unexpected columns in the run log")
    return agent_count, dimension


def read_csv(path: str) -> RunLog:
    """Reads a run CSV written by write_csv.

    Raises:
        OutputError: the file cannot be read or parsed

    Returns:
        RunLog: the arrays of the run
    """
    try:
        with open(path, "r", newline="", encoding="utf-8") as file:
            comments = []
            line = file.readline()
            while line.startswith(COMMENT):
                comments.append(line)
                line = file.readline()
            columns = next(csv.reader([line]))
            rows = list(csv.reader(file))
    except (OSError, StopIteration) as error:
        raise OutputError(f"cannot read {path}: {error}") from error
    header = _parse_header(comments)
    agent_count, dimension = _layout(columns)
    positions = {name: number for number, name in enumerate(columns)}
    count = len(rows)
    recorder = RunLogRecorder(
        header.get("scenario", ""),
        header.get("config_hash", ""),
        int(header.get("seed", "0") or 0),
        count,
        agent_count,
        dimension,
    )
    try:
        for row in rows:
            values = {
                "times": ffloat(row[0]),
                "index": ffloat(row[1]),
            }
            for key, field in zip(
                ("positions", "velocities", "inputs", "estimates"),
                VECTOR_FIELDS,
            ):
                values[key] = [
                    [
                        ffloat(row[positions[f"a{i}_{field}_{axis}"]])
                        for axis in AXES[:dimension]
                    ]
                    for i in range(agent_count)
                ]
            for key, field in (
                ("betas", "beta"),
                ("kl_divergences", "dkl"),
                ("kappa_g", "kappa_g"),
                ("global_errors", "err_global"),
                ("local_errors", "err_local"),
                ("lyapunov", "lyapunov"),
            ):
                values[key] = [
                    ffloat(row[positions[f"a{i}_{field}"]])
                    for i in range(agent_count)
                ]
            values["modes"] = [
                row[positions[f"a{i}_mode"]] for i in range(agent_count)
            ]
            recorder.record(**values)
    except (ValueError, IndexError) as error:
        raise OutputError(f"cannot parse {path}: {error}") from error
    return recorder.finish()


def write_summary(
    path: str,
    run_log: RunLog,
    summary: MetricsSummary,
    extra: Optional[Dict] = None,
):
    """Writes the JSON summary of a run.

    Raises:
        OutputError: the file cannot be written
    """
    document = {
        "scenario": run_log.name,
        "records": run_log.record_count,
        **summary.to_record(),
        **(extra or {}),
    }
    _makedirs(path)
    try:
        with open(path, "wb") as file:
            file.write(dumps(document))
            file.write(b"\n")
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error}") from error
    logger.info(f"summary written in {path}")


def _write_table(path: str, columns: Sequence[str], table: np.ndarray):
    try:
        with open(path, "w", newline="", encoding="utf-8") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(
                [repr(v) for v in row] for row in table.tolist()
            )
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error}") from error


def write_series(directory: str, run_log: RunLog) -> List[str]:
    """Writes the plot-ready series, one CSV per quantity.

    Args:
        directory (str): output directory
        run_log (RunLog): the run

    Raises:
        OutputError: a file cannot be written

    Returns:
        List[str]: paths of the written files
    """
    agents = [f"a{i}" for i in range(run_log.agent_count)]
    times = run_log.times[:, None]
    tables = {
        "index.csv": (["t", "index"], run_log.index[:, None]),
        "tracking_error.csv": (agents, run_log.global_errors),
        "kl_divergence.csv": (agents, run_log.kl_divergences),
        "beta.csv": (agents, run_log.betas),
        "kappa_g.csv": (agents, run_log.kappa_g),
        "trajectory.csv": (
            [
                f"{agent}_{axis}"
                for agent in agents
                for axis in AXES[: run_log.dimension]
            ],
            run_log.positions.reshape(run_log.record_count, -1),
        ),
    }
    written = []
    for name, (columns, values) in tables.items():
        path = os.path.join(directory, name)
        _makedirs(path)
        header = columns if columns[0] == "t" else ["t", *columns]
        _write_table(path, header, np.hstack([times, values]))
        written.append(path)
    logger.info(f"{len(written)} series written in {directory}")
    return written
