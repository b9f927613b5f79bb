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
from typing import Iterable, List, Optional, Sequence, Tuple, Union
from loguru import logger

from ipalg.common.exceptions import (InternalInvariantViolation, ScopeException,
                                     SpaceMismatchException)
from ipalg.gamble_cone import ConePiece, closed_generators, marginal_rays
from ipalg.lp.polyhedra import HalfSpace, HRepresentation, enumerate_vertices
from ipalg.lp.simplex import Relation, maximize
from ipalg.space import Gamble, Scope, Space, lift, marginalize_mass
from ipalg.utils.rationals import normalize_direction

Vector = Tuple[Fraction, ...]
PrevisionValue = Union[Fraction, float]


@dataclass(frozen=True)
class LowerPrevision:
    """
    Coherent lower prevision given by the closed cone generated by its
    assessment gambles and the unit gambles, or Null (generators is None),
    which assigns +inf to every gamble.
    """
    space: Space
    generators: Optional[Tuple[Gamble, ...]] = ()

    @staticmethod
    def null(space: Space) -> "LowerPrevision":
        return LowerPrevision(space, None)

    @staticmethod
    def vacuous(space: Space) -> "LowerPrevision":
        return LowerPrevision(space, ())

    @staticmethod
    def from_generators(space: Space, gambles: Iterable[Gamble]) -> "LowerPrevision":
        vectors = []
        for gamble in gambles:
            if gamble.space != space or gamble.scope != space.full_scope:
                raise SpaceMismatchException(f"Assessment gamble {gamble} is not on the full scope of {space}")
            vectors.append(gamble.values)

        if _incurs_sure_loss(vectors):
            logger.debug(f"Assessment of {len(vectors)} gambles incurs sure loss, prevision is null")
            return LowerPrevision.null(space)

        kept = sorted({normalize_direction(v) for v in vectors if not all(x >= 0 for x in v)})
        index = 0
        while index < len(kept):
            rest = kept[:index] + kept[index + 1:]
            if _lower(rest, kept[index]) >= 0:
                del kept[index]
            else:
                index += 1

        return LowerPrevision(space, tuple(Gamble(space, space.full_scope, v) for v in kept))

    @staticmethod
    def linear(space: Space, mass: Sequence) -> "LowerPrevision":
        p = [Fraction(v) for v in mass]
        cells = space.cell_count(space.full_scope)
        if len(p) != cells or any(v < 0 for v in p) or sum(p) != 1:
            raise ValueError(f"Not a mass function on {cells} cells: {mass}")

        gambles = []
        for index in range(cells):
            centered = Gamble.unit(space, space.full_scope, index).shift(-p[index])
            gambles += [centered, -centered]
        return LowerPrevision.from_generators(space, gambles)

    @property
    def is_null(self) -> bool:
        return self.generators is None

    @property
    def is_vacuous(self) -> bool:
        return self.generators == ()

    def vectors(self) -> List[Vector]:
        return [g.values for g in self.generators or ()]

    def __str__(self) -> str:
        if self.is_null:
            return "null"
        return "prevision {" + ", ".join(map(str, self.generators)) + "}"


@dataclass(frozen=True)
class CredalSet:
    space: Space
    vertices: Tuple[Vector, ...]

    def lower_envelope(self, f: Gamble) -> Fraction:
        return min(f.dot(p) for p in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


def _incurs_sure_loss(vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return False
    outcome = maximize([0] * len(vectors),
                       [([g[w] for g in vectors], Relation.LE, -1) for w in range(len(vectors[0]))])
    return not outcome.is_infeasible


def _lower(vectors: Sequence[Vector], f: Vector) -> Fraction:
    """max mu s.t. f - mu - sum lambda_j g_j >= 0, lambda >= 0"""
    k = len(vectors)
    outcome = maximize([0] * k + [1],
                       [([g[w] for g in vectors] + [1], Relation.LE, f[w]) for w in range(len(f))],
                       free_variables=[k])
    if not outcome.is_optimal:
        raise InternalInvariantViolation(f"Lower prevision LP ended {outcome.status} on a coherent assessment")
    return outcome.value


def _check_gamble(p: LowerPrevision, f: Gamble) -> None:
    if f.space != p.space or f.scope != p.space.full_scope:
        raise SpaceMismatchException(f"Gamble {f} is not on the full scope of {p.space}")


def _check_previsions(p1: LowerPrevision, p2: LowerPrevision) -> None:
    if p1.space != p2.space:
        raise SpaceMismatchException(f"Previsions over {p1.space} and {p2.space}")


def sigma(d: ConePiece) -> LowerPrevision:
    generators = closed_generators(d)
    if generators is None:
        return LowerPrevision.null(d.space)
    return LowerPrevision.from_generators(d.space, generators)


def prevision(p: LowerPrevision, f: Gamble) -> PrevisionValue:
    _check_gamble(p, f)
    if p.is_null:
        return math.inf
    return _lower(p.vectors(), f.values)


def upper_prevision(p: LowerPrevision, f: Gamble) -> Optional[Fraction]:
    """Conjugate upper prevision; None for the null prevision."""
    _check_gamble(p, f)
    if p.is_null:
        return None
    return -_lower(p.vectors(), (-f).values)


def combine(p1: LowerPrevision, p2: LowerPrevision) -> LowerPrevision:
    _check_previsions(p1, p2)
    if p1.is_null or p2.is_null:
        return LowerPrevision.null(p1.space)
    if p1.is_vacuous:
        return p2
    if p2.is_vacuous:
        return p1
    return LowerPrevision.from_generators(p1.space, p1.generators + p2.generators)


def extract(p: LowerPrevision, s: Scope) -> LowerPrevision:
    s = p.space.scope(s)
    if p.is_null or p.is_vacuous or s == p.space.full_scope:
        return p
    return LowerPrevision.from_generators(p.space, marginal_rays(p.space, p.vectors(), s))


def dominates(p1: LowerPrevision, p2: LowerPrevision) -> bool:
    """
    P1 <= P2: P2 is at least as informative. Equivalent to the credal set of P2
    lying inside the credal set of P1, which reduces to P2 being nonnegative on
    each generator of P1, so no vertex enumeration is needed.
    """
    _check_previsions(p1, p2)
    if p2.is_null:
        return True
    if p1.is_null:
        return False
    return all(_lower(p2.vectors(), g.values) >= 0 for g in p1.generators)


def prevision_equals(p1: LowerPrevision, p2: LowerPrevision) -> bool:
    return dominates(p1, p2) and dominates(p2, p1)


def credal_vertices(p: LowerPrevision) -> CredalSet:
    if p.is_null:
        return CredalSet(p.space, ())

    cells = p.space.cell_count(p.space.full_scope)
    rows = [HalfSpace(tuple(Fraction(1) if j == i else Fraction(0) for j in range(cells))) for i in range(cells)]
    rows.append(HalfSpace((Fraction(1),) * cells, Fraction(1), equality=True))
    rows += [HalfSpace(g) for g in p.vectors()]

    vertices = enumerate_vertices(HRepresentation(cells, tuple(rows)))
    logger.trace(f"Credal set of {p} has {len(vertices)} vertices")
    return CredalSet(p.space, tuple(vertices))


def is_linear(p: LowerPrevision) -> bool:
    return not p.is_null and len(credal_vertices(p)) == 1


def expectation(mass: Sequence, f: Gamble) -> Fraction:
    return f.dot([Fraction(v) for v in mass])


def avoids_sure_loss(gambles: Sequence[Gamble]) -> bool:
    return not _incurs_sure_loss([g.values for g in gambles])


def natural_extension_from_bounds(space: Space, assessments: Iterable[tuple]) -> LowerPrevision:
    """
    Assessments are (f, mu) lower bounds P(f) >= mu, or (f, mu, True) for
    upper bounds P(f) <= mu.
    """
    gambles = []
    for assessment in assessments:
        f, bound = assessment[0], Fraction(assessment[1])
        upper = len(assessment) > 2 and bool(assessment[2])
        gambles.append((-f).shift(bound) if upper else f.shift(-bound))
    return LowerPrevision.from_generators(space, gambles)


def tau_strict_contains(p: LowerPrevision, f: Gamble) -> bool:
    return f.is_positive() or prevision(p, f) > 0


def tau_bar_contains(p: LowerPrevision, f: Gamble) -> bool:
    return prevision(p, f) >= 0


def _relation_scope(relation: Sequence[Gamble]) -> Optional[Scope]:
    scopes = {g.scope for g in relation}
    if len(scopes) > 1:
        raise ScopeException(f"Relation mixes mass functions over {[sorted(s) for s in scopes]}")
    return next(iter(scopes), None)


def natural_join_membership(p: Gamble, r1: Sequence[Gamble], r2: Sequence[Gamble]) -> bool:
    """True iff the marginals of p onto the relation scopes are members of r1 and r2."""
    s, t = _relation_scope(r1), _relation_scope(r2)
    if s is None or t is None:
        return False
    if s | t != p.scope:
        raise ScopeException(f"Relations over {sorted(s)} and {sorted(t)} do not cover {sorted(p.scope)}")

    return marginalize_mass(p, s) in set(r1) and marginalize_mass(p, t) in set(r2)


def glue(p1: Gamble, p2: Gamble) -> Gamble:
    """p(x, y, z) = p1(x, y) p2(z | y) for mass functions agreeing on the shared scope."""
    if p1.space != p2.space:
        raise SpaceMismatchException(f"Mass functions over {p1.space} and {p2.space}")

    shared = p1.scope & p2.scope
    marginal = marginalize_mass(p1, shared)
    if marginal != marginalize_mass(p2, shared):
        raise ValueError(f"Mass functions disagree on their marginal over {sorted(shared)}")

    union = p1.scope | p2.scope
    left = np.array(lift(p1, union).values, dtype=object)
    right = np.array(lift(p2, union).values, dtype=object)
    base = np.array(lift(marginal, union).values, dtype=object)
    support = base != 0
    values = np.where(support, left * right / np.where(support, base, Fraction(1)), Fraction(0))
    return Gamble(p1.space, union, tuple(values))
