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

from typing import List, Optional
from dataclasses import dataclass


class IpalgException(Exception):
    pass


class SpaceMismatchException(IpalgException):
    pass


class ScopeException(IpalgException):
    pass


class MeasurabilityException(IpalgException):
    pass


class MalformedProgramException(IpalgException):
    pass


class UnboundedPolytopeException(IpalgException):
    pass


class UnsupportedVariantException(IpalgException):
    pass


class PreconditionViolation(IpalgException):
    pass


class InternalInvariantViolation(IpalgException):
    pass


class DeskScaleGuardExceeded(IpalgException):
    def __init__(self, guard: str, limit: int, actual: int) -> None:
        super().__init__(f"Desk-scale guard '{guard}' exceeded: {actual} > {limit}")
        self.guard = guard
        self.limit = limit
        self.actual = actual


@dataclass
class Diagnostic:
    message: str
    path: str = "$"
    line: Optional[int] = None
    column: Optional[int] = None

    def __str__(self) -> str:
        if self.line is not None:
            return f"{self.line}:{self.column}: {self.message}"
        return f"{self.path}: {self.message}"


class ModelParseException(IpalgException):
    def __init__(self, diagnostics: List[Diagnostic]) -> None:
        super().__init__("; ".join(map(str, diagnostics)))
        self.diagnostics = diagnostics


class QueryException(IpalgException):
    pass
