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

from loguru import logger

from ipalg.constants import EXIT_SUCCESS
from ipalg.executors.base_executor import BaseExecutor
from ipalg.utils.query_provider import QueryProvider


class RunExecutor(BaseExecutor):
    SUBCOMMAND = "run"
    ALIASES = ["batch"]
    HELP = "Run all queries declared in the model"

    def __init__(self, subparser: argparse._SubParsersAction):
        super().__init__(subparser)

    def invoke(self, args, provider: QueryProvider) -> int:
        from ipalg.helper.query_helper import run_queries

        document = self.load_document(args)
        report = run_queries(document)
        logger.success(f"Executed {len(report.entries)} queries from '{args.model}'")
        provider.write_report(report)
        return EXIT_SUCCESS
