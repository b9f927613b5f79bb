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

import numpy as np

from dataclasses import dataclass
from typing import Iterable, List, Tuple, TYPE_CHECKING

from ipalg.common.exceptions import SpaceMismatchException
from ipalg.space import Cell, Scope, Space

if TYPE_CHECKING:
    from ipalg.gamble_cone import ConePiece


@dataclass(frozen=True)
class EventSet:
    """
    Subset of the cells of the full scope. Bit i of mask is set iff the
    i-th cell in row-major order belongs to the event.
    """
    space: Space
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.size_of_space():
            raise ValueError(f"Event mask {self.mask:#x} exceeds {self.size_of_space()} cells")

    def size_of_space(self) -> int:
        return self.space.cell_count(self.space.full_scope)

    @staticmethod
    def empty(space: Space) -> "EventSet":
        return EventSet(space, 0)

    @staticmethod
    def full(space: Space) -> "EventSet":
        return EventSet(space, (1 << space.cell_count(space.full_scope)) - 1)

    @staticmethod
    def from_indices(space: Space, indices: Iterable[int]) -> "EventSet":
        mask = 0
        for index in indices:
            mask |= 1 << index
        return EventSet(space, mask)

    @staticmethod
    def from_cells(space: Space, cells: Iterable[Cell]) -> "EventSet":
        return EventSet.from_indices(space, (space.cell_index(c, space.full_scope) for c in cells))

    @staticmethod
    def from_array(space: Space, array: np.ndarray) -> "EventSet":
        return EventSet.from_indices(space, (int(i) for i in np.flatnonzero(array)))

    def indices(self) -> List[int]:
        return [i for i in range(self.size_of_space()) if self.mask >> i & 1]

    def cells(self) -> List[Cell]:
        return [self.space.cell_at(i, self.space.full_scope) for i in self.indices()]

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __str__(self) -> str:
        return "{" + ", ".join(self.space.cell_label(c, self.space.full_scope) for c in self.cells()) + "}"

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self == EventSet.full(self.space)

    def issubset(self, other: "EventSet") -> bool:
        _check_space(self, other)
        return self.mask & ~other.mask == 0

    def intersection(self, other: "EventSet") -> "EventSet":
        _check_space(self, other)
        return EventSet(self.space, self.mask & other.mask)

    def union(self, other: "EventSet") -> "EventSet":
        _check_space(self, other)
        return EventSet(self.space, self.mask | other.mask)

    def complement(self) -> "EventSet":
        return EventSet(self.space, EventSet.full(self.space).mask & ~self.mask)

    def array(self) -> np.ndarray:
        flags = np.array([self.mask >> i & 1 for i in range(self.size_of_space())], dtype=bool)
        return flags.reshape(self.space.shape(self.space.full_scope))


def _check_space(a: EventSet, b: EventSet) -> None:
    if a.space != b.space:
        raise SpaceMismatchException(f"Events over {a.space} and {b.space}")


def cylindrify(a: EventSet, s: Scope) -> EventSet:
    """Saturation of a: every cell that agrees on s with some cell of a."""
    s = a.space.scope(s)
    if a.is_empty():
        return a

    hidden = tuple(axis for axis, name in enumerate(a.space.names) if name not in s)
    if not hidden:
        return a

    array = a.array()
    saturated = np.broadcast_to(array.any(axis=hidden, keepdims=True), array.shape)
    return EventSet.from_array(a.space, saturated)


def event_union_meet(a: EventSet, b: EventSet) -> Tuple[EventSet, EventSet]:
    return a.intersection(b), a.union(b)


def embed(a: EventSet) -> "ConePiece":
    from ipalg.gamble_cone import ConePiece
    return ConePiece.from_event(a)
