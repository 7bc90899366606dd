# -*- coding: utf-8 -*-
# formation-resilience - Resilient time-varying formation tracking simulator
# Copyright (C) 2024 - formation-resilience developers
# This file is part of formation-resilience
# SPDX-License-Identifier: LGPL-3.0-or-later
"""Main program."""
import argparse
import logging
import signal
import sys
from typing import List
from typing import Optional

from .exception import FormationResilienceError
from .formation_resilience import CommandEnum
from .formation_resilience import FormationResilience
from .formation_resilience import LEVELS
from .models import dumps
from formation_resilience import __author__
from formation_resilience import __copyright__
from formation_resilience import __description__
from formation_resilience import __version__


class SmartFormatter(argparse.HelpFormatter):
    """Smart formatter for argparse - The lines are split for long text"""

    def _split_lines(self, text, width):
        if text.startswith("R|"):
            return text[2:].splitlines()
        # this is the RawTextHelpFormatter._split_lines
        return argparse.HelpFormatter._split_lines(  # pylint: disable=protected-access
            self, text, width
        )


class SigintHandler:  # pylint: disable=too-few-public-methods
    """Handles the signal"""

    def __init__(self):
        self.SIGINT = False  # pylint: disable=invalid-name

    def signal_handler(self, sig: int, frame):
        """Trap the signal

        Args:
            sig (int): the signal number
            frame: the current stack frame
        """
        # pylint: disable=unused-argument
        logging.error("You pressed Ctrl+C")
        self.SIGINT = True
        sys.exit(130)


def str2bool(string_to_test: str) -> bool:
    """Checks if a given string is a boolean

    Args:
        string_to_test (str): string to test

    Returns:
        bool: True when the string is a boolean otherwise False
    """
    return string_to_test.lower() in ("yes", "true", "t", "1")


def _config_argument(parser, required: bool = True, help_text: str = ""):
    parser.add_argument(
        "--config",
        required=required,
        type=str,
        help=help_text or "Scenario file or name of a bundled scenario",
    )


def _out_argument(parser):
    parser.add_argument(
        "--out",
        required=False,
        type=str,
        help="Output directory (default: output.directory of the scenario)",
    )


def _seed_argument(parser):
    parser.add_argument(
        "--seed",
        required=False,
        type=int,
        help="Seed of the noises (default: simulation.seed of the scenario)",
    )


def run_parser(subparser):
    run_command = subparser.add_parser(
        name=CommandEnum.RUN.value,
        description=CommandEnum.RUN.__doc__,
        formatter_class=SmartFormatter,
    )
    _config_argument(run_command)
    _out_argument(run_command)
    _seed_argument(run_command)


def sweep_parser(subparser):
    sweep_command = subparser.add_parser(
        name=CommandEnum.SWEEP.value,
        description=CommandEnum.SWEEP.__doc__,
        formatter_class=SmartFormatter,
    )
    _config_argument(
        sweep_command,
        required=False,
        help_text="Base scenario, replaces the base of the sweep file",
    )
    sweep_command.add_argument(
        "--overrides",
        required=False,
        type=str,
        help="""R|Sweep file or name of a bundled sweep. A TOML file with
    * base : base scenario
    * seed : root seed
    * [[override]] : dotted field paths and their values, one table per run""",
    )
    sweep_command.add_argument(
        "--jobs",
        required=False,
        type=int,
        default=1,
        help="Number of worker processes (default: %(default)s)",
    )
    _out_argument(sweep_command)
    _seed_argument(sweep_command)


def metrics_parser(subparser):
    metrics_command = subparser.add_parser(
        name=CommandEnum.METRICS.value,
        description=CommandEnum.METRICS.__doc__,
        formatter_class=SmartFormatter,
    )
    metrics_command.add_argument(
        "--log", required=True, type=str, help="Run log (CSV)"
    )
    metrics_command.add_argument(
        "--reference",
        required=False,
        type=str,
        help="Run log of the attack-free reference (CSV)",
    )
    metrics_command.add_argument(
        "--t_start",
        required=False,
        type=float,
        help="Attack time t_a (default: first attack of --config or first record)",
    )
    metrics_command.add_argument(
        "--t_end",
        required=False,
        type=float,
        help="End of the window (default: last record)",
    )
    _config_argument(
        metrics_command,
        required=False,
        help_text="Scenario of the log, to recompute the index from the "
        "positions with its metric constants",
    )
    metrics_command.add_argument(
        "--out",
        required=False,
        type=str,
        help="Directory of the metrics file (default: no file)",
    )


def validate_parser(subparser):
    validate_command = subparser.add_parser(
        name=CommandEnum.VALIDATE.value,
        description=CommandEnum.VALIDATE.__doc__,
        formatter_class=SmartFormatter,
    )
    _config_argument(validate_command)


def list_scenarios_parser(subparser):
    subparser.add_parser(
        name=CommandEnum.LIST_SCENARIOS.value,
        description=CommandEnum.LIST_SCENARIOS.__doc__,
        formatter_class=SmartFormatter,
    )


def parse_cli(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line inputs.

    Args:
        argv (Optional[List[str]]): arguments, sys.argv[1:] when None

    Returns:
        argparse.Namespace: Command line options
    """
    parser = argparse.ArgumentParser(
        description=__description__,
        formatter_class=SmartFormatter,
        epilog=__author__ + " - " + __copyright__,
    )
    parser.add_argument(
        "-v", "--version", action="version", version="%(prog)s " + __version__
    )

    parser.add_argument(
        "--level",
        choices=list(LEVELS),
        default="INFO",
        help="set Level log (default: %(default)s)",
    )

    parser.add_argument(
        "--progress_bar",
        type=str2bool,
        default=False,
        help="set progress_bar (default: %(default)s)",
    )

    subparser = parser.add_subparsers(dest="command", required=True)
    run_parser(subparser)
    sweep_parser(subparser)
    metrics_parser(subparser)
    validate_parser(subparser)
    list_scenarios_parser(subparser)

    return parser.parse_args(argv)


def error_record(error: BaseException, exit_code: int) -> str:
    """One-line JSON record of an error."""
    return dumps(
        {
            "error": type(error).__name__,
            "message": str(error),
            "exit_code": exit_code,
        },
        indent=False,
    ).decode("utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    """Runs the command line and returns the exit code.

    Args:
        argv (Optional[List[str]]): arguments, sys.argv[1:] when None

    Returns:
        int: 0 on success, the exit code of the error otherwise
    """
    options_cli = parse_cli(argv)
    try:
        return FormationResilience(options_cli=options_cli).run()
    except FormationResilienceError as error:
        logging.getLogger(__name__).debug("failure", exc_info=True)
        sys.stderr.write(error_record(error, error.exit_code) + "\n")
        return error.exit_code
    except Exception as error:  # pylint: disable=broad-except
        logging.exception(error)
        sys.stderr.write(error_record(error, 1) + "\n")
        return 1


def run():
    """Main function that instanciates the library."""
    handler = SigintHandler()
    signal.signal(signal.SIGINT, handler.signal_handler)
    sys.exit(main())


if __name__ == "__main__":
    # execute only if run as a script
    run()
