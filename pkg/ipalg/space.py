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

import math
import numpy as np

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple
from loguru import logger

from ipalg.constants import CELL_LABEL_SEPARATOR
from ipalg.common.exceptions import ScopeException, MeasurabilityException, SpaceMismatchException
from ipalg.utils.settings import current_limits
from ipalg.utils.rationals import format_rational

"""
Finite multivariate possibility spaces. Cells of a scope are enumerated in
row-major order (first variable of the Space slowest), this order is the
canonical layout of every gamble, event and mass function.
"""

Scope = FrozenSet[str]
Cell = Tuple[int, ...]


@dataclass(frozen=True)
class Variable:
    name: str
    domain: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.name}:{{{','.join(self.domain)}}}"


@dataclass(frozen=True)
class Space:
    variables: Tuple[Variable, ...]

    def __post_init__(self) -> None:
        names = [variable.name for variable in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"Variable names must be unique: {names}")

        for variable in self.variables:
            if variable.name == "" or CELL_LABEL_SEPARATOR in variable.name:
                raise ValueError(f"Invalid variable name '{variable.name}'")
            if len(variable.domain) == 0:
                raise ValueError(f"Domain of variable '{variable.name}' is empty")
            if len(set(variable.domain)) != len(variable.domain):
                raise ValueError(f"Domain of variable '{variable.name}' has duplicate labels")

        current_limits().check("max_cells", math.prod(len(v.domain) for v in self.variables))

    @staticmethod
    def from_dict(variables: Dict[str, Sequence[str]]) -> "Space":
        return Space(tuple(Variable(name, tuple(str(x) for x in domain))
                           for name, domain in variables.items()))

    @staticmethod
    def binary(*names: str) -> "Space":
        return Space(tuple(Variable(name, ("0", "1")) for name in names))

    def __str__(self) -> str:
        return " x ".join(map(str, self.variables)) if self.variables else "{()}"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(variable.name for variable in self.variables)

    @property
    def full_scope(self) -> Scope:
        return frozenset(self.names)

    def variable(self, name: str) -> Variable:
        for variable in self.variables:
            if variable.name == name:
                return variable
        raise ScopeException(f"Unknown variable '{name}' in space {self}")

    def scope(self, names: Iterable[str]) -> Scope:
        result = frozenset(names)
        unknown = result - self.full_scope
        if unknown:
            raise ScopeException(f"Unknown variable(s) {sorted(unknown)} in space {self}")
        return result

    def ordered(self, scope: Scope) -> Tuple[str, ...]:
        self.scope(scope)
        return tuple(name for name in self.names if name in scope)

    def shape(self, scope: Scope) -> Tuple[int, ...]:
        return tuple(len(self.variable(name).domain) for name in self.ordered(scope))

    def cell_count(self, scope: Scope) -> int:
        return math.prod(self.shape(scope))

    def restrict(self, scope: Scope) -> "Space":
        return Space(tuple(self.variable(name) for name in self.ordered(scope)))

    def is_restriction_of(self, other: "Space") -> bool:
        return all(variable in other.variables for variable in self.variables) \
            and self == other.restrict(self.full_scope)

    def cell_index(self, cell: Cell, scope: Scope) -> int:
        shape = self.shape(scope)
        if len(cell) != len(shape) or any(not 0 <= c < s for c, s in zip(cell, shape)):
            raise ScopeException(f"Cell {cell} is not a cell of scope {sorted(scope)}")
        if len(shape) == 0:
            return 0
        return int(np.ravel_multi_index(cell, shape))

    def cell_at(self, index: int, scope: Scope) -> Cell:
        shape = self.shape(scope)
        if len(shape) == 0:
            return ()
        return tuple(int(i) for i in np.unravel_index(index, shape))

    def restrict_cell(self, cell: Cell, scope: Scope, sub: Scope) -> Cell:
        if not sub <= scope:
            raise ScopeException(f"{sorted(sub)} is not a subset of {sorted(scope)}")
        return tuple(value for name, value in zip(self.ordered(scope), cell) if name in sub)

    def cell_label(self, cell: Cell, scope: Scope) -> str:
        return CELL_LABEL_SEPARATOR.join(self.variable(name).domain[value]
                                         for name, value in zip(self.ordered(scope), cell))

    def parse_cell_label(self, label: str, scope: Scope) -> Cell:
        ordered = self.ordered(scope)
        parts = label.split(CELL_LABEL_SEPARATOR) if ordered else []
        if len(ordered) == 0 and label != "":
            raise ScopeException(f"Cell '{label}' given for the empty scope")
        if len(parts) != len(ordered):
            raise ScopeException(f"Cell '{label}' does not match scope ({', '.join(ordered)})")

        cell = []
        for name, part in zip(ordered, parts):
            domain = self.variable(name).domain
            if part not in domain:
                raise ScopeException(f"Value '{part}' is not in the domain of '{name}'")
            cell.append(domain.index(part))
        return tuple(cell)


def enumerate_cells(space: Space, scope: Scope) -> List[Cell]:
    return [tuple(int(i) for i in cell) for cell in np.ndindex(*space.shape(scope))]


@dataclass(frozen=True)
class Gamble:
    space: Space
    scope: Scope
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", self.space.scope(self.scope))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        expected = self.space.cell_count(self.scope)
        if len(self.values) != expected:
            raise ValueError(f"Gamble has {len(self.values)} values, scope {sorted(self.scope)} has {expected} cells")

    @staticmethod
    def on(space: Space, values: Sequence) -> "Gamble":
        return Gamble(space, space.full_scope, tuple(values))

    @staticmethod
    def constant(space: Space, scope: Scope, value) -> "Gamble":
        return Gamble(space, scope, (Fraction(value),) * space.cell_count(scope))

    @staticmethod
    def zero(space: Space, scope: Scope) -> "Gamble":
        return Gamble.constant(space, scope, 0)

    @staticmethod
    def indicator(space: Space, scope: Scope, cells: Iterable[Cell]) -> "Gamble":
        hits = {space.cell_index(cell, scope) for cell in cells}
        return Gamble(space, scope, tuple(1 if i in hits else 0 for i in range(space.cell_count(scope))))

    @staticmethod
    def unit(space: Space, scope: Scope, index: int) -> "Gamble":
        return Gamble(space, scope, tuple(1 if i == index else 0 for i in range(space.cell_count(scope))))

    @staticmethod
    def from_function(space: Space, scope: Scope, function: Callable[[Cell], Fraction]) -> "Gamble":
        return Gamble(space, scope, tuple(function(cell) for cell in enumerate_cells(space, scope)))

    def __str__(self) -> str:
        return "(" + ", ".join(map(format_rational, self.values)) + ")"

    def _check_compatible(self, other: "Gamble") -> None:
        if self.space != other.space or self.scope != other.scope:
            raise SpaceMismatchException(f"Gambles on {sorted(self.scope)} and {sorted(other.scope)} differ in space or scope")

    def __add__(self, other: "Gamble") -> "Gamble":
        self._check_compatible(other)
        return Gamble(self.space, self.scope, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Gamble") -> "Gamble":
        self._check_compatible(other)
        return Gamble(self.space, self.scope, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Gamble":
        return Gamble(self.space, self.scope, tuple(-a for a in self.values))

    def scale(self, factor) -> "Gamble":
        factor = Fraction(factor)
        return Gamble(self.space, self.scope, tuple(factor * a for a in self.values))

    def shift(self, amount) -> "Gamble":
        amount = Fraction(amount)
        return Gamble(self.space, self.scope, tuple(a + amount for a in self.values))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.values)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.values)

    def is_positive(self) -> bool:
        """Member of L+: nonnegative and not the zero gamble."""
        return self.is_nonnegative() and not self.is_zero()

    def minimum(self) -> Fraction:
        return min(self.values)

    def maximum(self) -> Fraction:
        return max(self.values)

    def value_at(self, cell: Cell) -> Fraction:
        return self.values[self.space.cell_index(cell, self.scope)]

    def dot(self, mass: Sequence[Fraction]) -> Fraction:
        if len(mass) != len(self.values):
            raise ValueError(f"Mass function has {len(mass)} entries, gamble has {len(self.values)}")
        return sum((Fraction(p) * a for p, a in zip(mass, self.values)), Fraction(0))

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=object).reshape(self.space.shape(self.scope))


def _hidden_axes(space: Space, scope: Scope, kept: Scope) -> Tuple[int, ...]:
    return tuple(axis for axis, name in enumerate(space.ordered(scope)) if name not in kept)


def is_measurable(f: Gamble, s: Scope) -> bool:
    """True iff f(w) = f(w') whenever w and w' agree on s."""
    s = f.space.scope(s)
    if not s <= f.scope:
        raise ScopeException(f"Scope {sorted(s)} is not a subset of {sorted(f.scope)}")

    array = f.array()
    hidden = _hidden_axes(f.space, f.scope, s)
    reference = array[tuple(slice(0, 1) if axis in hidden else slice(None) for axis in range(array.ndim))]
    return bool(np.all(array == reference))


def lift(f: Gamble, r: Scope) -> Gamble:
    r = f.space.scope(r)
    if not f.scope <= r:
        raise ScopeException(f"Scope {sorted(r)} is not a superset of {sorted(f.scope)}")
    if r == f.scope:
        return f

    expanded = f.array().reshape(tuple(len(f.space.variable(name).domain) if name in f.scope else 1
                                       for name in f.space.ordered(r)))
    values = np.broadcast_to(expanded, f.space.shape(r)).reshape(-1)
    return Gamble(f.space, r, tuple(values))


def project_measurable(f: Gamble, s: Scope) -> Gamble:
    s = f.space.scope(s)
    if not is_measurable(f, s):
        raise MeasurabilityException(f"Gamble {f} is not measurable with respect to {sorted(s)}")
    if s == f.scope:
        return f

    array = f.array()
    hidden = _hidden_axes(f.space, f.scope, s)
    reference = array[tuple(0 if axis in hidden else slice(None) for axis in range(array.ndim))]
    return Gamble(f.space, s, tuple(np.asarray(reference, dtype=object).reshape(-1)))


def marginalize_mass(p: Gamble, s: Scope) -> Gamble:
    """Sum-marginal of a mass function (or any gamble) onto scope s."""
    s = p.space.scope(s)
    if not s <= p.scope:
        raise ScopeException(f"Scope {sorted(s)} is not a subset of {sorted(p.scope)}")

    hidden = _hidden_axes(p.space, p.scope, s)
    summed = p.array().sum(axis=hidden) if hidden else p.array()
    return Gamble(p.space, s, tuple(Fraction(v) for v in np.asarray(summed, dtype=object).reshape(-1)))


def rebase(f: Gamble, space: Space) -> Gamble:
    """
    Moves a gamble between a Space and one of its restrictions. Both sides
    share the row-major layout, so only the scope bookkeeping changes.
    """
    if f.space == space:
        return f

    if space.is_restriction_of(f.space):
        if f.scope != space.full_scope:
            raise ScopeException(f"Gamble on {sorted(f.scope)} cannot be rebased onto {space}")
        return Gamble(space, space.full_scope, f.values)

    if f.space.is_restriction_of(space):
        if f.scope != f.space.full_scope:
            raise ScopeException(f"Gamble on {sorted(f.scope)} is not on the full scope of {f.space}")
        return Gamble(space, f.scope, f.values)

    logger.debug(f"Unable to rebase gamble from {f.space} onto {space}")
    raise SpaceMismatchException(f"Spaces {f.space} and {space} are unrelated")
