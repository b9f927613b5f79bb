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

import cdd

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
from loguru import logger

from ipalg.common.exceptions import MalformedProgramException, UnboundedPolytopeException
from ipalg.lp.simplex import Constraint, LinearProgram, Relation, solve
from ipalg.utils.rationals import normalize_direction
from ipalg.utils.settings import current_limits
from ipalg.utils.statistics import record

Vector = Tuple[Fraction, ...]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x != 0 and y != 0), Fraction(0))


@dataclass(frozen=True)
class HalfSpace:
    """coefficients . x >= rhs, or = rhs for equalities"""
    coefficients: Vector
    rhs: Fraction = Fraction(0)
    equality: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @staticmethod
    def le(coefficients: Sequence, rhs=0) -> "HalfSpace":
        return HalfSpace(tuple(-Fraction(c) for c in coefficients), -Fraction(rhs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def contains(self, point: Sequence[Fraction]) -> bool:
        value = _dot(self.coefficients, point)
        return value == self.rhs if self.equality else value >= self.rhs

    def canonical(self) -> "HalfSpace":
        scale = next((abs(c) for c in self.coefficients if c != 0), None)
        if scale is None:
            return self
        if self.equality:
            scale = next(c for c in self.coefficients if c != 0)
        return HalfSpace(tuple(c / scale for c in self.coefficients), self.rhs / scale, self.equality)

    def as_constraint(self) -> Constraint:
        return Constraint(self.coefficients, Relation.EQ if self.equality else Relation.GE, self.rhs)

    def sort_key(self):
        return (self.equality, self.coefficients, self.rhs)


@dataclass(frozen=True)
class HRepresentation:
    dimension: int
    halfspaces: Tuple[HalfSpace, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for halfspace in self.halfspaces:
            if len(halfspace.coefficients) != self.dimension:
                raise MalformedProgramException(f"Half-space of dimension {len(halfspace.coefficients)} "
                                                f"in representation of dimension {self.dimension}")

    @property
    def is_homogeneous(self) -> bool:
        return all(h.rhs == 0 for h in self.halfspaces)

    @property
    def equalities(self) -> List[HalfSpace]:
        return [h for h in self.halfspaces if h.equality]

    @property
    def inequalities(self) -> List[HalfSpace]:
        return [h for h in self.halfspaces if not h.equality]

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(h.contains(point) for h in self.halfspaces)

    def intersect(self, other: "HRepresentation") -> "HRepresentation":
        if other.dimension != self.dimension:
            raise MalformedProgramException(f"Cannot intersect dimensions {self.dimension} and {other.dimension}")
        return HRepresentation(self.dimension, self.halfspaces + other.halfspaces)

    def feasibility_program(self, objective: Optional[Sequence] = None) -> LinearProgram:
        return LinearProgram(self.dimension,
                             tuple(objective) if objective is not None else (Fraction(0),) * self.dimension,
                             tuple(h.as_constraint() for h in self.halfspaces),
                             frozenset(range(self.dimension)))


def _canonical_rows(halfspaces: Sequence[HalfSpace]) -> List[HalfSpace]:
    seen = set()
    result = []
    for halfspace in halfspaces:
        if halfspace.is_zero():
            if (halfspace.equality and halfspace.rhs != 0) or (not halfspace.equality and halfspace.rhs > 0):
                # 0 >= positive: keep the infeasible row so emptiness survives
                halfspace = HalfSpace(halfspace.coefficients, Fraction(1), False)
            else:
                continue
        halfspace = halfspace.canonical()
        if halfspace not in seen:
            seen.add(halfspace)
            result.append(halfspace)
    return result


def remove_redundant(h: HRepresentation) -> HRepresentation:
    """
    Drops inequalities implied by the remaining ones. An inequality r is
    redundant iff min r.x over the others stays >= its rhs.
    """
    kept = list(_canonical_rows(h.halfspaces))
    index = 0
    while index < len(kept):
        candidate = kept[index]
        if candidate.equality or h.dimension == 0:
            index += 1
            continue

        others = HRepresentation(h.dimension, kept[:index] + kept[index + 1:])
        outcome = solve(others.feasibility_program(tuple(-c for c in candidate.coefficients)))
        if outcome.is_infeasible or (outcome.is_optimal and -outcome.value >= candidate.rhs):
            del kept[index]
        else:
            index += 1

    return HRepresentation(h.dimension, tuple(kept))


def project_cone(h: HRepresentation, keep: Sequence[int]) -> HRepresentation:
    """
    Fourier-Motzkin elimination of every variable not listed in keep. The
    result lives on the kept variables, in the order given.
    """
    if not h.is_homogeneous:
        raise MalformedProgramException("project_cone needs a homogeneous representation")

    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= k < h.dimension for k in keep):
        raise MalformedProgramException(f"Invalid kept variables {keep} for dimension {h.dimension}")

    eliminate = [v for v in range(h.dimension) if v not in keep]
    if not eliminate and keep == list(range(h.dimension)):
        return h
    current_limits().check("max_eliminated_variables", len(eliminate))

    rows = _canonical_rows(h.halfspaces)
    for variable in eliminate:
        pivot = next((r for r in rows if r.equality and r.coefficients[variable] != 0), None)
        if pivot is not None:
            rows = [_substitute(r, pivot, variable) for r in rows if r is not pivot]
        else:
            positive = [r for r in rows if not r.equality and r.coefficients[variable] > 0]
            negative = [r for r in rows if not r.equality and r.coefficients[variable] < 0]
            rows = [r for r in rows if r.coefficients[variable] == 0]
            for p in positive:
                for n in negative:
                    a, b = p.coefficients[variable], -n.coefficients[variable]
                    rows.append(HalfSpace(tuple(b * x + a * y for x, y in zip(p.coefficients, n.coefficients))))

        rows = list(remove_redundant(HRepresentation(h.dimension, tuple(_canonical_rows(rows)))).halfspaces)
        record(eliminations=1)
        logger.trace(f"Eliminated variable {variable}: {len(rows)} rows remain")

    projected = tuple(HalfSpace(tuple(r.coefficients[k] for k in keep), r.rhs, r.equality) for r in rows)
    return HRepresentation(len(keep), tuple(sorted(_canonical_rows(projected), key=HalfSpace.sort_key)))


def _substitute(row: HalfSpace, pivot: HalfSpace, variable: int) -> HalfSpace:
    factor = row.coefficients[variable] / pivot.coefficients[variable]
    if factor == 0:
        return row
    return HalfSpace(tuple(a - factor * b for a, b in zip(row.coefficients, pivot.coefficients)),
                     row.rhs - factor * pivot.rhs, row.equality)


def _cdd_inequalities(h: HRepresentation) -> cdd.Matrix:
    """
    H-representation in cdd layout, rows (b, A) meaning b + A x >= 0, with
    equalities in the linearity set. The leading row 1 >= 0 fixes the
    dimension of otherwise empty systems.
    """
    def row(halfspace: HalfSpace) -> List[Fraction]:
        return [-halfspace.rhs] + list(halfspace.coefficients)

    matrix = cdd.Matrix([[Fraction(1)] + [Fraction(0)] * h.dimension], number_type="fraction")
    inequalities = [row(s) for s in _canonical_rows(h.inequalities)]
    equalities = [row(s) for s in h.equalities]
    if inequalities:
        matrix.extend(inequalities)
    if equalities:
        matrix.extend(equalities, linear=True)
    matrix.rep_type = cdd.RepType.INEQUALITY
    return matrix


def _generators(matrix: cdd.Matrix) -> Tuple[List[Vector], List[Vector], List[Vector]]:
    """Splits a cdd V-representation into points, rays and lineality directions."""
    generators = cdd.Polyhedron(matrix).get_generators()
    points, rays, lines = [], [], []
    for index in range(generators.row_size):
        row = [Fraction(v) for v in generators[index]]
        vector = tuple(row[1:])
        if index in generators.lin_set:
            lines.append(vector)
        elif row[0] == 0:
            rays.append(vector)
        else:
            points.append(tuple(v / row[0] for v in vector))
    return points, rays, lines


def extreme_rays(h: HRepresentation) -> List[Vector]:
    """
    Minimal V-representation of a homogeneous cone: both orientations of a
    lineality basis and the extreme rays of the pointed part, each scaled to
    a unit leading entry and sorted lexicographically.
    """
    if not h.is_homogeneous:
        raise MalformedProgramException("extreme_rays needs a homogeneous representation")

    _, rays, lines = _generators(_cdd_inequalities(h))
    generators = {normalize_direction(r) for r in rays if any(v != 0 for v in r)}
    for line in lines:
        generators.add(normalize_direction(line))
        generators.add(normalize_direction(tuple(-v for v in line)))

    result = sorted(generators)
    current_limits().check("max_rays", len(result))
    record(rays_enumerated=len(result))
    logger.trace(f"Cone of dimension {h.dimension}: {len(rays)} rays, {len(lines)} lines")
    return result


def enumerate_vertices(h: HRepresentation) -> List[Vector]:
    """
    Vertices of a bounded polytope, deduplicated and in lexicographic
    order. An empty polytope yields no vertices.
    """
    limits = current_limits()
    limits.check("max_vertex_dimension", h.dimension)
    limits.check("max_vertex_constraints", len(h.halfspaces))

    points, rays, lines = _generators(_cdd_inequalities(h))
    if not points:
        return []
    if rays or lines:
        raise UnboundedPolytopeException("Vertex enumeration requires a bounded polytope")

    result = sorted(set(points))
    record(rays_enumerated=len(result))
    return result
