# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""This module contains the library."""
import logging
import os
import sys
from typing import Any
from typing import Dict
from typing import Optional
from typing import TextIO

import numpy as np

from .custom_logging import TRACE
from .exception import ArgumentError
from .exception import OutputError
from .metrics import MetricsConfig
from .metrics import summarize
from .metrics import tracking_sample
from .models import dumps
from .scenario import build_components
from .scenario import bundled_scenarios
from .scenario import bundled_sweeps
from .scenario import config_hash
from .scenario import load_scenario
from .scenario import load_sweep
from .scenario import read_csv
from .scenario import RunLog
from .scenario import run_with_metrics
from .scenario import save_result
from .scenario import sweep
from .scenario import write_sweep
from .utils import DocEnum

logger = logging.getLogger(__name__)

LEVELS = {
    "NOTSET": logging.NOTSET,
    "TRACE": TRACE,
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


class CommandEnum(DocEnum):
    RUN = ("run", "Run a scenario, write its log and its summary")
    SWEEP = ("sweep", "Run a scenario once per override set")
    METRICS = ("metrics", "Compute the metrics of an existing run log")
    VALIDATE = ("validate", "Validate a scenario")
    LIST_SCENARIOS = ("list-scenarios", "List the bundled scenarios")


class FormationResilience:
    """The library"""

    def __init__(self, options_cli, stdout: Optional[TextIO] = None):
        """
        Initializes the library.

        Args:
            options_cli: An object with attributes that correspond to the command
                         line options passed to the program.
            stdout (Optional[TextIO]): where the results are printed
        """
        self.__options_cli = options_cli
        self.__stdout = stdout
        FormationResilience._parse_level(getattr(options_cli, "level", "INFO"))

    @property
    def options_cli(self):
        """The command line options passed to the program."""
        return self.__options_cli

    @property
    def stdout(self) -> TextIO:
        return sys.stdout if self.__stdout is None else self.__stdout

    @staticmethod
    def _parse_level(level: str):
        """Parse level name and set the right level for the logger.
        If the level is not known, the INFO level is set

        Args:
            level (str): level name
        """
        package_logger = logging.getLogger("formation_resilience")
        if level in LEVELS:
            package_logger.setLevel(LEVELS[level])
        else:
            package_logger.warning(
                f"Unknown level name : {level} - setting level to INFO"
            )
            package_logger.setLevel(logging.INFO)

    def _print(self, document: Dict[str, Any]):
        self.stdout.write(dumps(document).decode("utf-8"))
        self.stdout.write("\n")

    def _option(self, name: str, default: Any = None) -> Any:
        value = getattr(self.__options_cli, name, None)
        return default if value is None else value

    def run(self) -> int:
        """Runs the command given on the command line.

        Returns:
            int: exit code
        """
        command = CommandEnum.find_enum(self.__options_cli.command)
        match command:
            case CommandEnum.RUN:
                self.run_scenario()
            case CommandEnum.SWEEP:
                self.run_sweep()
            case CommandEnum.METRICS:
                self.compute_metrics()
            case CommandEnum.VALIDATE:
                self.validate()
            case CommandEnum.LIST_SCENARIOS:
                self.list_scenarios()
        return 0

    def run_scenario(self):
        """Runs a scenario and writes its log, summary and series."""
        config = load_scenario(self.__options_cli.config)
        result = run_with_metrics(
            config,
            seed=self._option("seed"),
            progress=self._option("progress_bar", False),
        )
        paths = save_result(result, config, self._option("out"))
        self._print({**result.summary.to_record(), "files": paths})

    def run_sweep(self):
        """Runs a sweep and writes the outcomes."""
        base = None
        if self._option("config") is not None:
            base = load_scenario(self.__options_cli.config)
        overrides = self._option("overrides")
        if overrides is not None:
            plan = load_sweep(overrides, base)
            base, name = plan.base, plan.name
            override_sets, labels = list(plan.overrides), list(plan.labels)
        elif base is not None:
            name, override_sets, labels = base.name, [], None
        else:
            raise ArgumentError("sweep needs --config or --overrides")
        outcomes = sweep(
            base,
            override_sets,
            labels,
            jobs=self._option("jobs", 1),
            seed=self._option("seed"),
            progress=self._option("progress_bar", False),
        )
        directory = self._option("out", base.output.directory)
        path = os.path.join(directory, f"{name}_sweep.json")
        write_sweep(path, name, outcomes)
        self._print(
            {
                "sweep": name,
                "runs": len(outcomes),
                "failed": sum(1 for o in outcomes if not o.succeeded),
                "file": path,
            }
        )

    @staticmethod
    def _recompute_index(run_log: RunLog, components) -> np.ndarray:
        index = np.empty(run_log.record_count)
        for k, t in enumerate(run_log.times):
            desired = components.plan.snapshot(float(t))
            errors = run_log.positions[k] - desired.position
            index[k] = tracking_sample(
                errors, components.graph, components.metrics, float(t)
            ).index
        return index

    def compute_metrics(self):
        """Recomputes the metrics of a run log, against a reference if given."""
        run_log = read_csv(self.__options_cli.log)
        reference = None
        if self._option("reference") is not None:
            reference = read_csv(self.__options_cli.reference)
        components = None
        attack_time = self._option("t_start")
        if self._option("config") is not None:
            config = load_scenario(self.__options_cli.config)
            components = build_components(config)
            if attack_time is None:
                attack_time = config.metrics.attack_time
            if attack_time is None:
                attack_time = components.new_attacks().earliest_onset
        index, reference_index = run_log.index, None
        if components is not None:
            index = self._recompute_index(run_log, components)
        if reference is not None:
            reference_index = (
                reference.index
                if components is None
                else self._recompute_index(reference, components)
            )
        metrics = (
            MetricsConfig() if components is None else components.metrics
        )
        summary = summarize(
            index,
            run_log.times,
            metrics,
            attack_time=attack_time,
            end_time=self._option("t_end"),
            reference=reference_index,
            reference_times=None if reference is None else reference.times,
            config_hash=run_log.config_hash,
            seed=run_log.seed,
        )
        record = summary.to_record()
        if self._option("out") is not None:
            stem = os.path.splitext(os.path.basename(self.__options_cli.log))[0]
            path = os.path.join(self.__options_cli.out, f"{stem}_metrics.json")
            try:
                os.makedirs(self.__options_cli.out, exist_ok=True)
                with open(path, "wb") as file:
                    file.write(dumps(record))
                    file.write(b"\n")
            except OSError as error:
                raise OutputError(f"cannot write {path}: {error}") from error
            logger.info(f"metrics written in {path}")
        self._print(record)

    def validate(self):
        """Validates a scenario and prints its resolved parameters."""
        config = load_scenario(self.__options_cli.config)
        components = build_components(config)
        self._print(
            {
                "scenario": config.name,
                "valid": True,
                "agent_count": components.graph.agent_count,
                "dimension": config.simulation.dimension,
                "steps": config.simulation.step_count,
                "attacks": len(config.attacks),
                "estimator": components.estimator_enabled,
                "positioning": components.positioning.value,
                "algebraic_connectivity": components.graph.algebraic_connectivity,
                "config_hash": config_hash(config),
            }
        )

    def list_scenarios(self):
        """Prints the bundled scenarios and sweeps."""
        self._print({"scenarios": bundled_scenarios(), "sweeps": bundled_sweeps()})
