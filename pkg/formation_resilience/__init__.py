# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""
The objective of formation_resilience is to simulate a team of mobile agents
tracking a time-varying formation while some of them receive a deceived
global positioning signal, and to measure how well the team resists and
recovers.

Each agent is a double integrator controlled by a law mixing a local term
(relative displacements measured with its neighbors) and a global term
(its own positioning). The positioning signal can be attacked. A resilient
estimator, running an information filter per agent, detects the attack with
a Kullback-Leibler divergence gate and switches to cooperative localization
against the neighbors' desired trajectories. The quality of the positioning
signal can also drive the global tracking gain down while an attack lasts.

The package is organized in layers:

* models layer: frozen dataclasses describing a scenario file,
* physics layer: network (sensory graph), trajectory (formation plan),
  dynamics (integration and sensors),
* business layer: control, attacks, estimation and metrics,
* scenario layer: the single-rate loop, the run log and the sweeps.

The diagram below shows the control flow of one simulation step

.. mermaid::

    graph LR
        Dynamics --> |measurements| Attacks
        Attacks --> |positioning| Estimation
        Estimation --> |estimate, beta| GainTuning
        GainTuning --> |kappa_g| Control
        Control --> |u| Dynamics
        Dynamics --> |states| Metrics
        Metrics --> |index| RunLog
"""
import logging.config
import os
from logging import debug
from logging import getLogger
from logging import NullHandler
from logging import setLogRecordFactory
from logging import warning

from ._version import __author__
from ._version import __author_email__
from ._version import __copyright__
from ._version import __description__
from ._version import __license__
from ._version import __name_soft__
from ._version import __title__
from ._version import __url__
from ._version import __version__
from .custom_logging import LogRecord
from .custom_logging import SimTimeFilter
from .custom_logging import TRACE

logging.addLevelName(TRACE, "TRACE")
getLogger(__name__).addHandler(NullHandler())

try:
    PATH_TO_CONF = os.path.dirname(os.path.realpath(__file__))
    logging.config.fileConfig(
        os.path.join(PATH_TO_CONF, "logging.conf"),
        disable_existing_loggers=False,
    )
    debug(f"file {os.path.join(PATH_TO_CONF, 'logging.conf')} loaded")
except Exception as exception:  # pylint: disable=broad-except
    warning(f"cannot load logging.conf : {exception}")
for _handler in getLogger(__name__).handlers:
    _handler.addFilter(SimTimeFilter())
setLogRecordFactory(LogRecord)  # pylint: disable=no-member
