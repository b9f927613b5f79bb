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

import os
import json

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields, replace
from typing import Any, Iterator, Optional
from loguru import logger

from ipalg.constants import *
from ipalg.common.exceptions import DeskScaleGuardExceeded


@dataclass(frozen=True)
class DeskScaleLimits:
    max_cells: int = MAX_CELLS
    max_vertex_dimension: int = MAX_VERTEX_DIMENSION
    max_vertex_constraints: int = MAX_VERTEX_CONSTRAINTS
    max_eliminated_variables: int = MAX_ELIMINATED_VARIABLES
    max_rays: int = MAX_RAYS

    def check(self, guard: str, actual: int) -> None:
        limit = getattr(self, guard)
        if actual > limit:
            raise DeskScaleGuardExceeded(guard, limit, actual)

    def lowered(self, **overrides: Optional[int]) -> "DeskScaleLimits":
        """
        Returns a copy with the given guards replaced. Guards can only be
        lowered; a value above the current one is clamped.
        """
        changes = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in {f.name for f in fields(self)}:
                raise ValueError(f"Unknown desk-scale guard '{name}'")
            if value < 1:
                raise ValueError(f"Desk-scale guard '{name}' must be positive, got {value}")

            current = getattr(self, name)
            if value > current:
                logger.warning(f"Guard '{name}' can only be lowered: {value} > {current}, keeping {current}")
                continue
            changes[name] = value

        return replace(self, **changes)


_active_limits: ContextVar[DeskScaleLimits] = ContextVar("ipalg_limits", default=DeskScaleLimits())


def current_limits() -> DeskScaleLimits:
    return _active_limits.get()


@contextmanager
def limits_override(**overrides: Optional[int]) -> Iterator[DeskScaleLimits]:
    token = _active_limits.set(current_limits().lowered(**overrides))
    try:
        yield _active_limits.get()
    finally:
        _active_limits.reset(token)


@contextmanager
def use_limits(limits: DeskScaleLimits) -> Iterator[DeskScaleLimits]:
    token = _active_limits.set(limits)
    try:
        yield limits
    finally:
        _active_limits.reset(token)


class DefaultConfigs:
    def __init__(self, path: Optional[str] = None) -> None:
        self.defaults = {}
        if path is None:
            path = os.environ.get(DEFAULT_CONFIG_ENV, DEFAULT_CONFIG_PATH)

        if not os.path.exists(path):
            logger.debug(f"No default config in path '{path}' (or not readable)")
            return

        with open(path, "r") as handle:
            self.defaults = json.load(handle)

    def get_defaults(self, key: str, fallback: Any = None):
        if self.defaults is None or key not in self.defaults.keys():
            logger.trace(f"No default value for key '{key}' provided in config.")
            return fallback
        else:
            return self.defaults.get(key)

    def limits(self) -> DeskScaleLimits:
        return DeskScaleLimits().lowered(**{f.name: self.get_defaults(f.name)
                                            for f in fields(DeskScaleLimits)})
