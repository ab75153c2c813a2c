# Copyright (C) 2026 The supervised-alignment developers
#
# This file is part of supervised-alignment.
#
# supervised-alignment is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License version 3
# as published by the Free Software Foundation
#
# supervised-alignment is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with supervised-alignment.  If not, see <http://www.gnu.org/licenses/>.

"""
Command line interface
"""

import argparse
import logging
import sys

import versiontools

from supervised_alignment import __version__
from supervised_alignment.config import RunConfig
from supervised_alignment.errors import (
    AlignmentError,
    ConfigError,
    ValidationError,
)
from supervised_alignment.pipeline import RUN_STAGES, Pipeline
from supervised_alignment.validator import ConfigValidator


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILED = 2

LOG_FORMAT = "[%(asctime)s] %(levelname)s - %(message)s"

COMMANDS = (
    ("validate", "check the run configuration and exit", None),
    ("run", "run every stage", RUN_STAGES),
    ("prune", "prune every task and write the pruning tables", ("prune",)),
    ("probe", "probe stored retained sets", ("probe",)),
    ("stats", "test and cluster stored probing results", ("stats",)),
    ("report", "rebuild every table from stored artifacts", ("report",)),
)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", required=True, metavar="PATH",
        help="JSON run configuration")
    common.add_argument(
        "--seed", type=int, metavar="N",
        help="random seed (overrides the configuration)")
    common.add_argument(
        "--jobs", type=int, metavar="N",
        help="number of worker threads (overrides the configuration)")
    common.add_argument(
        "--out", metavar="DIR",
        help="output directory (overrides the configuration)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument(
        "-q", "--quiet", action="store_true", help="log warnings only")
    parser = argparse.ArgumentParser(
        prog="supervised-alignment",
        description="Supervised pruning and probing of word embeddings")
    parser.add_argument(
        "--version", action="version",
        version="%(prog)s " + versiontools.format_version(__version__))
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    for name, text, _ in COMMANDS:
        commands.add_parser(name, parents=[common], help=text)
    return parser


def setup_logging(verbose=False, quiet=False):
    level = logging.INFO
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level)


def load_config(args):
    config = RunConfig.load(args.config)
    return config.override(args.seed, args.jobs, args.out)


def main(argv=None):
    """
    Entry point of the ``supervised-alignment`` command.

    :returns:
        0 on success, 1 when the configuration is invalid, 2 when a stage
        fails
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    try:
        config = load_config(args)
        ConfigValidator.validate(config)
    except (ValidationError, ConfigError) as ex:
        logger.error("invalid configuration %s", args.config)
        sys.stderr.write("{0}\n".format(ex))
        return EXIT_INVALID
    except (EnvironmentError, ValueError) as ex:
        logger.error("cannot read configuration %s: %s", args.config, ex)
        return EXIT_INVALID
    stages = dict((name, stages) for name, _, stages in COMMANDS)[
        args.command]
    if stages is None:
        logger.info("configuration %s is valid", args.config)
        return EXIT_OK
    try:
        manifest = Pipeline(config).run(stages)
    except AlignmentError as ex:
        sys.stderr.write("{0}\n".format(ex))
        return EXIT_FAILED
    logger.info("wrote %d output file(s) to %s", len(manifest["outputs"]),
                config.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
