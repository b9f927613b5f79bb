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

from enum import Enum
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
from loguru import logger

from ipalg.common.exceptions import MalformedProgramException
from ipalg.utils.statistics import record


class Relation(Enum):
    LE = "<="
    EQ = "="
    GE = ">="

    def __str__(self):
        return str(self.value)

    @staticmethod
    def from_str(relation: str) -> "Relation":
        try:
            return Relation(relation)
        except ValueError:
            raise Exception(f"Unknown relation '{relation}'")

    def flipped(self) -> "Relation":
        if self == Relation.LE:
            return Relation.GE
        if self == Relation.GE:
            return Relation.LE
        return self


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def is_satisfied(self, point: Sequence[Fraction]) -> bool:
        lhs = sum((c * x for c, x in zip(self.coefficients, point)), Fraction(0))
        if self.relation == Relation.LE:
            return lhs <= self.rhs
        if self.relation == Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """
    maximize objective . x subject to the constraints. Variables listed in
    free_variables are unbounded, all others have lower bound 0.
    """
    variable_count: int
    objective: Tuple[Fraction, ...]
    constraints: Tuple[Constraint, ...] = ()
    free_variables: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "free_variables", frozenset(self.free_variables))

    def validate(self) -> None:
        if self.variable_count < 1:
            raise MalformedProgramException("A linear program needs at least one variable")
        if len(self.objective) != self.variable_count:
            raise MalformedProgramException(f"Objective has {len(self.objective)} coefficients, "
                                            f"expected {self.variable_count}")
        for index, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != self.variable_count:
                raise MalformedProgramException(f"Constraint {index} has {len(constraint.coefficients)} "
                                                f"coefficients, expected {self.variable_count}")
        if any(not 0 <= i < self.variable_count for i in self.free_variables):
            raise MalformedProgramException(f"Free variable index out of range: {sorted(self.free_variables)}")

    def is_feasible_point(self, point: Sequence[Fraction]) -> bool:
        if any(point[i] < 0 for i in range(self.variable_count) if i not in self.free_variables):
            return False
        return all(constraint.is_satisfied(point) for constraint in self.constraints)


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Optional[Fraction] = None
    witness: Optional[Tuple[Fraction, ...]] = None
    ray: Optional[Tuple[Fraction, ...]] = None
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL

    @property
    def is_infeasible(self) -> bool:
        return self.status == LpStatus.INFEASIBLE

    @property
    def is_unbounded(self) -> bool:
        return self.status == LpStatus.UNBOUNDED

    def exceeds(self, threshold: Fraction = Fraction(0)) -> bool:
        """Optimum strictly above threshold, or unbounded."""
        return self.is_unbounded or (self.is_optimal and self.value > threshold)


class _Tableau:
    """
    Dense tableau in standard form A x = b, x >= 0, b >= 0. The rhs is
    kept as the last entry of every row.
    """

    def __init__(self, rows: List[List[Fraction]], basis: List[int], columns: int) -> None:
        self.rows = rows
        self.basis = basis
        self.columns = columns
        self.pivots = 0

    def pivot(self, row: int, column: int) -> None:
        pivot_row = self.rows[row]
        factor = pivot_row[column]
        pivot_row[:] = [value / factor for value in pivot_row]

        for index, other in enumerate(self.rows):
            if index == row or other[column] == 0:
                continue
            scale = other[column]
            other[:] = [a - scale * b for a, b in zip(other, pivot_row)]

        self.basis[row] = column
        self.pivots += 1

    def reduced_cost(self, cost: Sequence[Fraction], column: int) -> Fraction:
        value = cost[column]
        for row, basic in zip(self.rows, self.basis):
            if cost[basic] != 0 and row[column] != 0:
                value -= cost[basic] * row[column]
        return value

    def objective_value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[basic] * row[-1] for row, basic in zip(self.rows, self.basis)), Fraction(0))

    def point(self) -> List[Fraction]:
        values = [Fraction(0)] * self.columns
        for row, basic in zip(self.rows, self.basis):
            values[basic] = row[-1]
        return values

    def optimize(self, cost: Sequence[Fraction], allowed: Iterable[int]) -> Optional[int]:
        """
        Maximizes cost . x from the current feasible basis with Bland's
        rule. Returns the entering column of an unbounded direction, or
        None once optimal.
        """
        allowed = sorted(allowed)
        while True:
            basic = set(self.basis)
            entering = next((j for j in allowed if j not in basic and self.reduced_cost(cost, j) > 0), None)
            if entering is None:
                return None

            leaving = None
            best = None
            for index, row in enumerate(self.rows):
                if row[entering] <= 0:
                    continue
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or (ratio == best and self.basis[index] < self.basis[leaving]):
                    best = ratio
                    leaving = index

            if leaving is None:
                return entering

            self.pivot(leaving, entering)


def solve(lp: LinearProgram) -> LpOutcome:
    """
    Exact two-phase primal simplex over the rationals. Pivoting follows
    Bland's rule, identical programs give identical outcomes.
    """
    lp.validate()

    # Column layout: x+ for every variable, x- for free ones, then slack,
    # surplus and artificial columns.
    positive = list(range(lp.variable_count))
    negative = {}
    columns = lp.variable_count
    for index in sorted(lp.free_variables):
        negative[index] = columns
        columns += 1

    normalized = []
    for constraint in lp.constraints:
        coefficients, relation, rhs = list(constraint.coefficients), constraint.relation, constraint.rhs
        if rhs < 0:
            coefficients, relation, rhs = [-c for c in coefficients], relation.flipped(), -rhs
        normalized.append((coefficients, relation, rhs))

    extra = sum(1 if relation == Relation.LE else 2 if relation == Relation.GE else 1
                for _, relation, _ in normalized)
    width = columns + extra
    rows: List[List[Fraction]] = []
    basis: List[int] = []
    artificials = set()

    next_column = columns
    for coefficients, relation, rhs in normalized:
        row = [Fraction(0)] * (width + 1)
        for index, value in enumerate(coefficients):
            row[positive[index]] = value
            if index in negative:
                row[negative[index]] = -value
        row[-1] = rhs

        if relation == Relation.LE:
            row[next_column] = Fraction(1)
            basis.append(next_column)
            next_column += 1
        else:
            if relation == Relation.GE:
                row[next_column] = Fraction(-1)
                next_column += 1
            row[next_column] = Fraction(1)
            artificials.add(next_column)
            basis.append(next_column)
            next_column += 1
        rows.append(row)

    tableau = _Tableau(rows, basis, width)

    if artificials:
        phase_one = [Fraction(-1) if j in artificials else Fraction(0) for j in range(width)]
        tableau.optimize(phase_one, range(width))
        if tableau.objective_value(phase_one) < 0:
            return _finish(lp, LpOutcome(LpStatus.INFEASIBLE, pivots=tableau.pivots))

        # Drive remaining (zero level) artificials out, drop redundant rows
        index = 0
        while index < len(tableau.rows):
            if tableau.basis[index] in artificials:
                row = tableau.rows[index]
                column = next((j for j in range(width) if j not in artificials and row[j] != 0), None)
                if column is None:
                    del tableau.rows[index]
                    del tableau.basis[index]
                    continue
                tableau.pivot(index, column)
            index += 1

    cost = [Fraction(0)] * width
    for index, value in enumerate(lp.objective):
        cost[positive[index]] = value
        if index in negative:
            cost[negative[index]] = -value

    entering = tableau.optimize(cost, [j for j in range(width) if j not in artificials])
    if entering is not None:
        direction = [Fraction(0)] * width
        direction[entering] = Fraction(1)
        for row, basic in zip(tableau.rows, tableau.basis):
            direction[basic] = -row[entering]
        ray = _original(lp, direction, negative)
        return _finish(lp, LpOutcome(LpStatus.UNBOUNDED, ray=ray, pivots=tableau.pivots))

    witness = _original(lp, tableau.point(), negative)
    value = sum((c * x for c, x in zip(lp.objective, witness)), Fraction(0))
    return _finish(lp, LpOutcome(LpStatus.OPTIMAL, value=value, witness=witness, pivots=tableau.pivots))


def _original(lp: LinearProgram, values: Sequence[Fraction], negative: dict) -> Tuple[Fraction, ...]:
    return tuple(values[i] - (values[negative[i]] if i in negative else 0) for i in range(lp.variable_count))


def _finish(lp: LinearProgram, outcome: LpOutcome) -> LpOutcome:
    record(lp_solves=1, lp_pivots=outcome.pivots)
    logger.trace(f"LP with {lp.variable_count} variables, {len(lp.constraints)} constraints: "
                 f"{outcome.status} after {outcome.pivots} pivots"
                 + (f", value {outcome.value}" if outcome.is_optimal else ""))
    return outcome


def maximize(objective: Sequence, constraints: Iterable[Tuple[Sequence, Relation, object]],
             free_variables: Iterable[int] = ()) -> LpOutcome:
    objective = tuple(Fraction(c) for c in objective)
    return solve(LinearProgram(len(objective), objective,
                               tuple(Constraint(tuple(c), relation, rhs) for c, relation, rhs in constraints),
                               frozenset(free_variables)))
