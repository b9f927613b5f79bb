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

from pathlib import Path
from typing import Optional
from loguru import logger

from ipalg.helper.query_helper import QueryReport
from ipalg.utils.settings import DeskScaleLimits


class QueryProvider:
    def __init__(self, verbose: int, limits: DeskScaleLimits, out: Optional[Path] = None) -> None:
        self.log_verbose = verbose
        self.limits = limits
        self.out = out

    def write_report(self, report: QueryReport) -> None:
        encoded = report.as_json() + "\n"
        if self.out is None:
            print(encoded, end="")
            return

        try:
            with open(self.out, "w") as handle:
                handle.write(encoded)
        except Exception as ex:
            raise Exception(f"Unable to write report to '{self.out}'") from ex
        logger.info(f"Report with {len(report.entries)} entries written to '{self.out}'")
