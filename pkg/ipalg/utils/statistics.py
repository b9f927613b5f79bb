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

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, asdict
from typing import Dict, Iterator, Optional


@dataclass
class DerivationStatistics:
    lp_solves: int = 0
    lp_pivots: int = 0
    rays_enumerated: int = 0
    eliminations: int = 0

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


_collector: ContextVar[Optional[DerivationStatistics]] = ContextVar("ipalg_statistics", default=None)


@contextmanager
def collect_statistics() -> Iterator[DerivationStatistics]:
    statistics = DerivationStatistics()
    token = _collector.set(statistics)
    try:
        yield statistics
    finally:
        _collector.reset(token)


def record(lp_solves: int = 0, lp_pivots: int = 0,
           rays_enumerated: int = 0, eliminations: int = 0) -> None:
    statistics = _collector.get()
    if statistics is None:
        return

    statistics.lp_solves += lp_solves
    statistics.lp_pivots += lp_pivots
    statistics.rays_enumerated += rays_enumerated
    statistics.eliminations += eliminations
