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

import sys

from loguru import logger

from ipalg.constants import *
from ipalg.common.exceptions import (DeskScaleGuardExceeded, MeasurabilityException, ModelParseException,
                                     PreconditionViolation, QueryException, ScopeException,
                                     SpaceMismatchException, UnsupportedVariantException)

_USER_ERRORS = (ModelParseException, QueryException, ScopeException, SpaceMismatchException,
                MeasurabilityException, UnsupportedVariantException, PreconditionViolation)


class CLI:
    _CLEAN_LOG_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>"

    @staticmethod
    def setup_early_logging():
        logger.remove()
        logger.add(sys.stderr, level="INFO", format=CLI._CLEAN_LOG_FORMAT)

    @staticmethod
    def enable_logging(verbose: int):
        logger.remove()
        if verbose == 0:
            logger.add(sys.stderr, level="INFO", format=CLI._CLEAN_LOG_FORMAT)
        elif verbose == 1:
            logger.add(sys.stderr, level="DEBUG", format=CLI._CLEAN_LOG_FORMAT)
        else:
            logger.add(sys.stderr, level="TRACE")

    @staticmethod
    def report_failure(ex: Exception) -> int:
        """Logs a failed invocation and maps it to the process exit code."""
        if isinstance(ex, DeskScaleGuardExceeded):
            logger.critical(f"Desk-scale guard '{ex.guard}' exceeded: {ex.actual} > {ex.limit}")
            return EXIT_GUARD_EXCEEDED

        if isinstance(ex, ModelParseException):
            logger.critical(f"Model contains {len(ex.diagnostics)} error(s):")
            for diagnostic in ex.diagnostics:
                logger.critical(f"  {diagnostic}")
            return EXIT_PARSE_ERROR

        if isinstance(ex, _USER_ERRORS):
            logger.critical(str(ex))
            return EXIT_PARSE_ERROR

        logger.opt(exception=ex).critical("Query failed unexpectedly")
        return EXIT_FAILURE
