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


class FormatExecutor(BaseExecutor):
    SUBCOMMAND = "format"
    ALIASES = ["fmt"]
    HELP = "Validate the model and print it in canonical form"

    def __init__(self, subparser: argparse._SubParsersAction):
        super().__init__(subparser)
        self.subparser.add_argument("--check", required=False, default=False, action="store_true",
                                    help="Only validate, print nothing")

    def invoke(self, args, provider: QueryProvider) -> int:
        from ipalg.helper.model_helper import serialize_model

        document = self.load_document(args)
        if args.check:
            logger.success(f"Model '{args.model}' is valid: {len(document.pieces)} pieces over {document.space}")
            return EXIT_SUCCESS

        canonical = serialize_model(document)
        if provider.out is None:
            print(canonical, end="")
        else:
            with open(provider.out, "w") as handle:
                handle.write(canonical)
        return EXIT_SUCCESS
