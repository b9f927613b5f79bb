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

from ipalg.common.exceptions import DeskScaleGuardExceeded, UnboundedPolytopeException
from ipalg.lp.polyhedra import (HalfSpace, HRepresentation, enumerate_vertices, extreme_rays, project_cone,
                                remove_redundant)
from ipalg.utils.settings import limits_override

F = Fraction


def _cone(*rows) -> HRepresentation:
    return HRepresentation(len(rows[0]), tuple(HalfSpace(tuple(r)) for r in rows))


def _simplex(dimension: int) -> list:
    rows = [HalfSpace(tuple(1 if j == i else 0 for j in range(dimension))) for i in range(dimension)]
    rows.append(HalfSpace((1,) * dimension, 1, equality=True))
    return rows


class TestVertices:
    def test_standard_simplex(self):
        assert enumerate_vertices(HRepresentation(2, tuple(_simplex(2)))) == [(F(0), F(1)), (F(1), F(0))]

    def test_cut_simplex(self):
        rows = _simplex(2) + [HalfSpace((1, -1))]
        assert enumerate_vertices(HRepresentation(2, tuple(rows))) == [(F(1, 2), F(1, 2)), (F(1), F(0))]

    def test_square(self):
        rows = (HalfSpace((1, 0)), HalfSpace((0, 1)), HalfSpace.le((1, 0), 1), HalfSpace.le((0, 1), 1))
        assert enumerate_vertices(HRepresentation(2, rows)) == [(F(0), F(0)), (F(0), F(1)),
                                                                  (F(1), F(0)), (F(1), F(1))]

    def test_exact_thirds(self):
        rows = _simplex(2) + [HalfSpace((1, -2))]
        vertices = enumerate_vertices(HRepresentation(2, tuple(rows)))
        assert vertices == [(F(2, 3), F(1, 3)), (F(1), F(0))]
        assert all(isinstance(v, Fraction) for vertex in vertices for v in vertex)

    def test_empty(self):
        rows = (HalfSpace((1,)), HalfSpace.le((1,), -1))
        assert enumerate_vertices(HRepresentation(1, rows)) == []

    def test_unbounded(self):
        with pytest.raises(UnboundedPolytopeException):
            enumerate_vertices(HRepresentation(2, (HalfSpace((1, 0)), HalfSpace((0, 1)))))

    def test_dimension_guard(self):
        with limits_override(max_vertex_dimension=2):
            with pytest.raises(DeskScaleGuardExceeded):
                enumerate_vertices(HRepresentation(3, tuple(_simplex(3))))

    def test_constraint_guard(self):
        with limits_override(max_vertex_constraints=2):
            with pytest.raises(DeskScaleGuardExceeded):
                enumerate_vertices(HRepresentation(2, tuple(_simplex(2))))


class TestProjection:
    def test_single_elimination(self):
        projected = project_cone(_cone((1, -1), (0, 1)), [0])
        assert projected.halfspaces == (HalfSpace((F(1),)),)

    def test_pairwise_bounds(self):
        projected = project_cone(_cone((1, 0, -1), (0, 1, 1), (0, 0, 1)), [0, 1])
        assert projected.halfspaces == (HalfSpace((F(1), F(0))), HalfSpace((F(1), F(1))))

    def test_identity(self):
        cone = _cone((1, -1), (0, 1))
        assert project_cone(cone, [0, 1]) is cone

    def test_equality_substitution(self):
        rows = (HalfSpace((1, 0, -1)), HalfSpace((0, 1, -1), equality=True), HalfSpace((0, 0, 1)))
        projected = project_cone(HRepresentation(3, rows), [0, 1])
        assert all(h.contains((F(2), F(1))) for h in projected.halfspaces)
        assert not all(h.contains((F(0), F(1))) for h in projected.halfspaces)

    def test_elimination_guard(self):
        with limits_override(max_eliminated_variables=1):
            with pytest.raises(DeskScaleGuardExceeded):
                project_cone(_cone((1, -1, -1), (0, 1, 0), (0, 0, 1)), [0])

    @settings(max_examples=30)
    @given(data=st.data())
    def test_membership_matches_lifted_feasibility(self, data):
        entry = st.integers(min_value=-2, max_value=2)
        rows = data.draw(st.lists(st.lists(entry, min_size=3, max_size=3), min_size=1, max_size=4))
        cone = HRepresentation(3, tuple(HalfSpace(tuple(r)) for r in rows))
        projected = project_cone(cone, [0, 1])
        point = data.draw(st.lists(entry, min_size=2, max_size=2))

        from ipalg.lp.simplex import solve
        lifted = HRepresentation(3, cone.halfspaces + (HalfSpace((1, 0, 0), point[0], True),
                                                       HalfSpace((0, 1, 0), point[1], True)))
        feasible = not solve(lifted.feasibility_program()).is_infeasible
        assert projected.contains(tuple(map(F, point))) == feasible


class TestRays:
    def test_orthant(self):
        assert extreme_rays(_cone((1, 0), (0, 1))) == [(F(0), F(1)), (F(1), F(0))]

    def test_halfplane(self):
        rays = extreme_rays(_cone((1, 1)))
        assert (F(1), F(-1)) in rays and (F(-1), F(1)) in rays
        assert len(rays) == 3
        assert all(r[0] + r[1] >= 0 for r in rays)

    def test_full_space(self):
        rays = extreme_rays(HRepresentation(2, ()))
        assert len(rays) == 4
        assert all(tuple(-v for v in r) in rays for r in rays)

    def test_pointed_cone(self):
        rays = extreme_rays(_cone((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)))
        assert len(rays) == 4
        for ray in rays:
            assert ray[0] >= 0 and ray[1] >= 0 and ray[2] >= 0 and ray[0] + ray[1] >= ray[2]

    def test_equality_ray(self):
        rows = (HalfSpace((1, 0)), HalfSpace((0, 1)), HalfSpace((1, -1), equality=True))
        assert extreme_rays(HRepresentation(2, rows)) == [(F(1), F(1))]

    def test_zero_cone(self):
        assert extreme_rays(_cone((1, 0), (-1, 0), (0, 1), (0, -1))) == []

    def test_ray_guard(self):
        with limits_override(max_rays=1):
            with pytest.raises(DeskScaleGuardExceeded):
                extreme_rays(_cone((1, 0), (0, 1)))


class TestHelpers:
    def test_remove_redundant(self):
        reduced = remove_redundant(_cone((1, 0), (0, 1), (1, 1)))
        assert set(reduced.halfspaces) == {HalfSpace((F(1), F(0))), HalfSpace((F(0), F(1)))}
