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

from ipalg.executors.base_executor import BaseExecutor
from ipalg.utils.query_provider import QueryProvider


class SolveMarginalExecutor(BaseExecutor):
    SUBCOMMAND = "solve-marginal"
    ALIASES = ["solve"]
    HELP = "Solve the marginal problem, on a join tree if the pieces admit one"

    def __init__(self, subparser: argparse._SubParsersAction):
        super().__init__(subparser)
        self.subparser.add_argument("pieces", type=str, nargs="+", help="Pieces of the knowledge base, in RIP order")

    def invoke(self, args, provider: QueryProvider) -> int:
        return self.run_query(args, provider, args.pieces)
