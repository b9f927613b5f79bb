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

import pytest

from fractions import Fraction
from hypothesis import given, settings, strategies as st

from ipalg.common.exceptions import MalformedProgramException
from ipalg.lp.polyhedra import HalfSpace, HRepresentation, enumerate_vertices
from ipalg.lp.simplex import Constraint, LinearProgram, LpStatus, Relation, maximize, solve
from ipalg.utils.statistics import collect_statistics


class TestSolve:
    def test_single_variable_optimum(self):
        outcome = maximize([1], [([1], Relation.LE, 3)])
        assert outcome.status == LpStatus.OPTIMAL
        assert outcome.value == 3
        assert outcome.witness == (Fraction(3),)

    def test_unbounded(self):
        outcome = maximize([1], [])
        assert outcome.is_unbounded
        assert outcome.ray[0] > 0

    def test_infeasible(self):
        assert maximize([0], [([1], Relation.LE, -1)]).is_infeasible

    def test_equality_and_ge(self):
        outcome = maximize([1, 1], [([1, 1], Relation.EQ, 2), ([1, 0], Relation.GE, Fraction(1, 2)),
                                    ([1, -1], Relation.LE, 1)])
        assert outcome.value == 2
        assert outcome.witness[0] >= Fraction(1, 2)

    def test_free_variable(self):
        outcome = maximize([-1], [([1], Relation.GE, -5)], free_variables=[0])
        assert outcome.value == 5
        assert outcome.witness == (Fraction(-5),)

    def test_exceeds(self):
        assert maximize([1], [([1], Relation.LE, 1)]).exceeds(0)
        assert not maximize([1], [([1], Relation.LE, 0)]).exceeds(0)
        assert maximize([1], []).exceeds(0)

    def test_malformed(self):
        with pytest.raises(MalformedProgramException):
            solve(LinearProgram(2, (Fraction(1),), ()))
        with pytest.raises(MalformedProgramException):
            solve(LinearProgram(1, (Fraction(1),), (Constraint((1, 1), Relation.LE, 1),)))
        with pytest.raises(MalformedProgramException):
            solve(LinearProgram(0, ()))

    def test_relation_from_str(self):
        assert Relation.from_str("<=") == Relation.LE
        assert Relation.LE.flipped() == Relation.GE
        with pytest.raises(Exception):
            Relation.from_str("<")

    def test_records_statistics(self):
        with collect_statistics() as statistics:
            maximize([1, 1], [([1, 2], Relation.LE, 4), ([3, 1], Relation.LE, 6)])
        assert statistics.lp_solves == 1
        assert statistics.lp_pivots >= 1

    def test_deterministic(self):
        program = [([1, 1, 0], Relation.LE, 1), ([0, 1, 1], Relation.LE, 1), ([1, 0, 1], Relation.LE, 1)]
        first = maximize([1, 1, 1], program)
        second = maximize([1, 1, 1], program)
        assert first == second
        assert first.value == Fraction(3, 2)


@st.composite
def bounded_programs(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    coefficient = st.integers(min_value=-3, max_value=3)
    objective = draw(st.lists(coefficient, min_size=n, max_size=n))
    constraints = []
    for _ in range(draw(st.integers(min_value=0, max_value=4))):
        row = draw(st.lists(coefficient, min_size=n, max_size=n))
        relation = draw(st.sampled_from([Relation.LE, Relation.GE, Relation.EQ]))
        constraints.append((row, relation, draw(st.integers(min_value=-4, max_value=6))))
    # box keeps the feasible region bounded
    for i in range(n):
        constraints.append(([1 if j == i else 0 for j in range(n)], Relation.LE, 5))
    return objective, constraints


def _polytope(n, constraints) -> HRepresentation:
    rows = [HalfSpace(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    for coefficients, relation, rhs in constraints:
        if relation == Relation.LE:
            rows.append(HalfSpace.le(coefficients, rhs))
        else:
            rows.append(HalfSpace(tuple(coefficients), rhs, relation == Relation.EQ))
    return HRepresentation(n, tuple(rows))


class TestVertexOracle:
    @settings(max_examples=500)
    @given(program=bounded_programs())
    def test_optimum_matches_vertices(self, program):
        objective, constraints = program
        n = len(objective)
        outcome = maximize(objective, constraints)
        vertices = enumerate_vertices(_polytope(n, constraints))

        if not vertices:
            assert outcome.is_infeasible
            return

        assert outcome.is_optimal
        assert outcome.value == max(sum(Fraction(c) * x for c, x in zip(objective, v)) for v in vertices)
        assert all(Constraint(tuple(c), r, b).is_satisfied(outcome.witness) for c, r, b in constraints)
        assert all(x >= 0 for x in outcome.witness)
