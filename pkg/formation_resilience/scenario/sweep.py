# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
Module Name:
    sweep

Description:
    Independent runs of a base scenario with overridden fields. The seed of
    run r is drawn from numpy.random.SeedSequence([seed, r]) so that a sweep
    is reproducible whatever the number of workers. An error in a run is
    recorded in its outcome and does not stop the sweep.

    Sweep files are TOML documents::

        base = "sim_attack_unstable"     # bundled name or path
        seed = 0                         # optional, base scenario seed
        [[override]]
        label = "c_a=0.25"               # optional
        "attacks.0.c_a" = 0.25

Classes:
    SweepOutcome
    SweepPlan

Author:
    formation-resilience developers
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from ..exception import ConfigurationError
from ..exception import FormationResilienceError
from ..exception import OutputError
from ..metrics import MetricsSummary
from ..models import dumps
from ..models import ScenarioConfig
from ..utils import ProgressLogger
from ..utils import UtilsMonitoring
from .config import apply_overrides
from .config import load_scenario
from .config import read_document
from .config import resolve_path
from .config import SWEEP_DIRECTORY
from .runner import run_with_metrics

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepOutcome:
    """Result of one run of a sweep."""

    index: int
    label: str
    seed: int
    overrides: Dict[str, Any] = field(default_factory=dict)
    summary: Optional[MetricsSummary] = None
    error: Optional[str] = None
    error_type: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.error is None

    def to_record(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "label": self.label,
            "seed": self.seed,
            "overrides": self.overrides,
            "summary": None if self.summary is None else self.summary.to_record(),
            "error": self.error,
            "error_type": self.error_type,
        }


@dataclass(frozen=True)
class SweepPlan:
    """Base scenario and overrides read from a sweep file."""

    name: str
    base: ScenarioConfig
    overrides: Tuple[Dict[str, Any], ...]
    labels: Tuple[str, ...]


def run_seeds(seed: int, count: int) -> List[int]:
    """Independent seeds of the runs of a sweep."""
    return [
        int(np.random.SeedSequence([seed, index]).generate_state(1)[0])
        for index in range(count)
    ]


def load_sweep(
    name_or_path: str, base: Optional[ScenarioConfig] = None
) -> SweepPlan:
    """Reads a sweep file.

    Args:
        name_or_path (str): path of a sweep file or name of a bundled sweep
        base (Optional[ScenarioConfig]): base scenario replacing the one named
            in the file

    Raises:
        OutputError: the file cannot be read
        ConfigurationError: invalid document
    """
    path = resolve_path(name_or_path, SWEEP_DIRECTORY)
    document = read_document(path)
    unknown = sorted(set(document) - {"base", "seed", "override"})
    if unknown:
        raise ConfigurationError(f"unknown key(s) {unknown}")
    if base is None:
        if not isinstance(document.get("base"), str):
            raise ConfigurationError("a base scenario is required", "base")
        base = load_scenario(document["base"])
    if "seed" in document:
        base = apply_overrides(base, {"simulation.seed": document["seed"]})
    overrides, labels = [], []
    for number, entry in enumerate(document.get("override", [])):
        if not isinstance(entry, dict):
            raise ConfigurationError("expected a table", f"override.{number}")
        entry = dict(entry)
        labels.append(str(entry.pop("label", f"run{number}")))
        overrides.append(entry)
    name = os.path.splitext(os.path.basename(path))[0]
    return SweepPlan(name, base, tuple(overrides), tuple(labels))


def _run_one(job: Tuple[ScenarioConfig, int, str, Dict[str, Any], int]):
    base, index, label, overrides, seed = job
    try:
        config = apply_overrides(base, overrides)
        result = run_with_metrics(config, seed)
        return SweepOutcome(index, label, seed, overrides, result.summary)
    except FormationResilienceError as error:
        logger.warning(f"run {index} ({label}) failed: {error}")
        return SweepOutcome(
            index,
            label,
            seed,
            overrides,
            error=str(error),
            error_type=type(error).__name__,
        )
    except Exception as error:  # pylint: disable=broad-except
        logger.exception(f"run {index} ({label}) failed")
        return SweepOutcome(
            index,
            label,
            seed,
            overrides,
            error=str(error),
            error_type=type(error).__name__,
        )


@UtilsMonitoring.timeit
def sweep(
    base: ScenarioConfig,
    overrides: Sequence[Mapping[str, Any]],
    labels: Optional[Sequence[str]] = None,
    jobs: int = 1,
    seed: Optional[int] = None,
    progress: bool = False,
) -> List[SweepOutcome]:
    """Runs a base scenario once per override set.

    Args:
        base (ScenarioConfig): base scenario
        overrides (Sequence[Mapping[str, Any]]): dotted path to value, per run;
            empty for a single run of the base scenario
        labels (Optional[Sequence[str]]): names of the runs
        jobs (int): number of worker processes, 1 runs in this process
        seed (Optional[int]): root seed, the scenario seed when None
        progress (bool): True to draw a progress bar

    Returns:
        List[SweepOutcome]: outcomes in the order of the overrides
    """
    override_sets = [dict(o) for o in overrides] or [{}]
    if labels is None or len(labels) != len(override_sets):
        labels = [f"run{index}" for index in range(len(override_sets))]
    root = base.simulation.seed if seed is None else seed
    seeds = run_seeds(root, len(override_sets))
    jobs_list = [
        (base, index, labels[index], override_sets[index], seeds[index])
        for index in range(len(override_sets))
    ]
    logger.info(
        f"sweep of {base.name}: {len(jobs_list)} runs on {jobs} worker(s)"
    )
    outcomes: List[SweepOutcome] = []
    with ProgressLogger(
        len(jobs_list), description="sweep", disable_tqdm=not progress
    ) as bar:
        if jobs <= 1:
            for job in jobs_list:
                outcomes.append(_run_one(job))
                bar.update()
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                for outcome in executor.map(_run_one, jobs_list):
                    outcomes.append(outcome)
                    bar.update()
    failed = sum(1 for outcome in outcomes if not outcome.succeeded)
    if failed:
        logger.warning(f"{failed} of {len(outcomes)} runs failed")
    return outcomes


def write_sweep(path: str, name: str, outcomes: Sequence[SweepOutcome]):
    """Writes the outcomes of a sweep as JSON.

    Raises:
        OutputError: the file cannot be written
    """
    document = {
        "sweep": name,
        "runs": [outcome.to_record() for outcome in outcomes],
    }
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "wb") as file:
            file.write(dumps(document))
            file.write(b"\n")
    except OSError as error:
        raise OutputError(f"cannot write {path}: {error}") from error
    logger.info(f"sweep written in {path}")
