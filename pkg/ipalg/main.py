#
# This file is part of ipalg.
#
# Copyright (C) 2025-2026 ipalg contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, version 3.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see https://www.gnu.org/licenses/.
#

import argparse
import sys
import os
import importlib
import inspect

from loguru import logger
from pathlib import Path
from typing import Dict, List, Optional

from ipalg.executors.base_executor import BaseExecutor


def build_parser() -> tuple:
    parser = argparse.ArgumentParser(prog=os.environ.get("CALLER_SCRIPT", "ipalg"),
                                     description="Information algebras of desirable gambles and lower previsions")

    common_parser = argparse.ArgumentParser(add_help=False)
    common_parser.add_argument("-v", "--verbose", action="count", required=False, default=0,
                               help="-v: Print DEBUG log messages, -vv: Print TRACE log messages")
    common_parser.add_argument("-m", "--model", required=True, type=str,
                               help="Path to the JSON model file")
    common_parser.add_argument("-o", "--out", required=False, default=None, type=str,
                               help="Write the report to this file instead of stdout")
    common_parser.add_argument("--max-cells", required=False, default=None, type=int,
                               help="Lower the guard on the number of cells of a space")
    common_parser.add_argument("--max-rays", required=False, default=None, type=int,
                               help="Lower the guard on the number of rays during enumeration")
    common_parser.add_argument("--defaults", required=False, default=None, type=str,
                               help="Path to a defaults file with desk-scale guards")

    subparsers = parser.add_subparsers(title="subcommand", dest="mode", required=True,
                                       description="Query to run against the model")

    subcommands: Dict[str, BaseExecutor] = {}
    aliases: Dict[str, str] = {}

    executors_base_path = Path(__file__).parent.resolve() / "executors"
    for filename in sorted(os.listdir(executors_base_path)):
        if not filename.endswith(".py") or filename in ("__init__.py", "base_executor.py"):
            continue

        module = importlib.import_module(f"ipalg.executors.{filename[:-3]}")
        for _, obj in inspect.getmembers(module, inspect.isclass):
            if not issubclass(obj, BaseExecutor) or obj is BaseExecutor:
                continue

            if obj.SUBCOMMAND == BaseExecutor.SUBCOMMAND:
                continue

            subcommand_parser = subparsers.add_parser(obj.SUBCOMMAND,
                                                      aliases=obj.ALIASES,
                                                      help=obj.HELP,
                                                      parents=[common_parser])
            subcommands[obj.SUBCOMMAND] = obj(subcommand_parser)

            for alias in obj.ALIASES:
                aliases[alias] = obj.SUBCOMMAND

    return parser, subcommands, aliases


def main(argv: Optional[List[str]] = None) -> int:
    try:
        parser, subcommands, aliases = build_parser()
    except Exception as ex:
        logger.opt(exception=ex).critical("Error loading command executors")
        return 1

    args = parser.parse_args(argv)

    # Lazy loading from here on for CLI reactivity
    from ipalg.cli import CLI
    from ipalg.utils.settings import DefaultConfigs, use_limits
    from ipalg.utils.query_provider import QueryProvider

    CLI.setup_early_logging()
    CLI.enable_logging(args.verbose)

    mode = aliases.get(args.mode, args.mode)
    executor: Optional[BaseExecutor] = subcommands.get(mode, None)

    if executor is None:
        logger.critical(f"Unable to get implementation for subcommand '{mode}'")
        return 1

    try:
        limits = DefaultConfigs(args.defaults).limits().lowered(max_cells=args.max_cells,
                                                               max_rays=args.max_rays)
    except Exception as ex:
        logger.critical(f"Invalid desk-scale guards: {ex}")
        return 1

    provider = QueryProvider(verbose=args.verbose, limits=limits,
                             out=Path(args.out) if args.out is not None else None)
    try:
        with use_limits(limits):
            return executor.invoke(args, provider)
    except Exception as ex:
        return CLI.report_failure(ex)


if __name__ == "__main__":
    sys.exit(main())
