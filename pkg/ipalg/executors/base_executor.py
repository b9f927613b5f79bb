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

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, List

from ipalg.constants import EXIT_SUCCESS
from ipalg.utils.query_provider import QueryProvider


class BaseExecutor(ABC):
    SUBCOMMAND = "##DONT_LOAD##"
    ALIASES = []
    HELP = "I'm an abstract base class"

    def __init__(self, subparser: argparse._SubParsersAction):
        self.subparser = subparser

    @abstractmethod
    def invoke(self, args, provider: QueryProvider) -> int:
        pass

    def load_document(self, args):
        from ipalg.utils.config_tools import load_model
        return load_model(Path(args.model))

    def run_query(self, args, provider: QueryProvider, query_args: List[Any]) -> int:
        from ipalg.helper.query_helper import run

        document = self.load_document(args)
        provider.write_report(run(document, self.SUBCOMMAND, query_args))
        return EXIT_SUCCESS
