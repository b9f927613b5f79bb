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

from enum import Enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple
from loguru import logger

from ipalg.common.exceptions import SpaceMismatchException, UnsupportedVariantException
from ipalg.lp.simplex import Relation, maximize
from ipalg.lp.polyhedra import HalfSpace, HRepresentation, extreme_rays, project_cone
from ipalg.set_algebra import EventSet, cylindrify
from ipalg.space import Gamble, Scope, Space, enumerate_cells, lift, project_measurable
from ipalg.utils.rationals import normalize_direction

Vector = Tuple[Fraction, ...]


class ConeKind(Enum):
    VACUOUS = "vacuous"
    GENERATED = "generated"
    EVENT = "event"
    MIXED = "mixed"
    CONTRADICTION = "contradiction"

    def __str__(self):
        return str(self.value)

    @staticmethod
    def from_str(kind: str) -> "ConeKind":
        try:
            return ConeKind(kind)
        except ValueError:
            raise Exception(f"Unknown cone kind '{kind}'")


@dataclass(frozen=True)
class ConePiece:
    """
    A coherent set of desirable gambles on the full scope of a Space, or the
    contradiction L(Omega). Instances are built through the static
    constructors, which canonicalize the generators and collapse incoherent
    assessments.

    Generated(G) stands for posi(G u L+), Event(A) for the gambles that are
    in L+ or have a positive minimum on A, Mixed(A, G) for the natural
    extension of both.
    """
    space: Space
    kind: ConeKind
    generators: Tuple[Gamble, ...] = ()
    event: Optional[EventSet] = None

    @staticmethod
    def vacuous(space: Space) -> "ConePiece":
        return ConePiece(space, ConeKind.VACUOUS)

    @staticmethod
    def contradiction(space: Space) -> "ConePiece":
        return ConePiece(space, ConeKind.CONTRADICTION)

    @staticmethod
    def generated(space: Space, gambles: Iterable[Gamble]) -> "ConePiece":
        vectors = _vectors(space, gambles)
        if not _avoids_partial_loss(vectors):
            logger.debug(f"Assessment of {len(vectors)} gambles incurs partial loss, collapsing to contradiction")
            return ConePiece.contradiction(space)

        vectors = _prune(_canonical(v for v in vectors if not _nonnegative(v)),
                         lambda candidate, rest: _in_generated(rest, candidate))
        if not vectors:
            return ConePiece.vacuous(space)
        return ConePiece(space, ConeKind.GENERATED, _gambles(space, vectors))

    @staticmethod
    def from_event(a: EventSet) -> "ConePiece":
        if a.is_empty():
            return ConePiece.contradiction(a.space)
        if a.is_full():
            return ConePiece.vacuous(a.space)
        return ConePiece(a.space, ConeKind.EVENT, (), a)

    @staticmethod
    def mixed(a: EventSet, gambles: Iterable[Gamble]) -> "ConePiece":
        space = a.space
        vectors = _vectors(space, gambles)
        if a.is_empty():
            return ConePiece.contradiction(space)
        if a.is_full():
            return ConePiece.generated(space, _gambles(space, vectors))
        if not vectors:
            return ConePiece.from_event(a)

        if not _avoids_partial_loss(vectors) or _event_margin(a, vectors, (Fraction(0),) * a.size_of_space()):
            logger.debug(f"Event {a} with {len(vectors)} gambles is incoherent, collapsing to contradiction")
            return ConePiece.contradiction(space)

        indices = a.indices()
        vectors = [v for v in vectors if not _nonnegative(v) and not min(v[i] for i in indices) > 0]
        vectors = _prune(_canonical(vectors),
                         lambda candidate, rest: _in_generated(rest, candidate) or _event_margin(a, rest, candidate))
        if not vectors:
            return ConePiece.from_event(a)
        return ConePiece(space, ConeKind.MIXED, _gambles(space, vectors), a)

    def __str__(self) -> str:
        parts = [str(self.kind)]
        if self.event is not None:
            parts.append(str(self.event))
        if self.generators:
            parts.append("{" + ", ".join(map(str, self.generators)) + "}")
        return " ".join(parts)

    @property
    def is_contradiction(self) -> bool:
        return self.kind == ConeKind.CONTRADICTION

    @property
    def is_vacuous(self) -> bool:
        return self.kind == ConeKind.VACUOUS

    @property
    def is_coherent(self) -> bool:
        return self.kind != ConeKind.CONTRADICTION

    def vectors(self) -> List[Vector]:
        return [g.values for g in self.generators]


def _cells(space: Space) -> range:
    return range(space.cell_count(space.full_scope))


def _check_gamble(space: Space, gamble: Gamble) -> None:
    if gamble.space != space or gamble.scope != space.full_scope:
        raise SpaceMismatchException(f"Gamble on {sorted(gamble.scope)} of {gamble.space} "
                                     f"is not on the full scope of {space}")


def _check_pieces(d1: ConePiece, d2: ConePiece) -> None:
    if d1.space != d2.space:
        raise SpaceMismatchException(f"Pieces over {d1.space} and {d2.space}")


def _vectors(space: Space, gambles: Iterable[Gamble]) -> List[Vector]:
    vectors = []
    for gamble in gambles:
        _check_gamble(space, gamble)
        vectors.append(gamble.values)
    return vectors


def _gambles(space: Space, vectors: Iterable[Vector]) -> Tuple[Gamble, ...]:
    return tuple(Gamble(space, space.full_scope, v) for v in vectors)


def _nonnegative(vector: Vector) -> bool:
    return all(v >= 0 for v in vector)


def _canonical(vectors: Iterable[Vector]) -> List[Vector]:
    return sorted({normalize_direction(v) for v in vectors if any(x != 0 for x in v)})


def _prune(vectors: List[Vector], redundant) -> List[Vector]:
    kept = list(vectors)
    index = 0
    while index < len(kept):
        if redundant(kept[index], kept[:index] + kept[index + 1:]):
            del kept[index]
        else:
            index += 1
    return kept


def _avoids_partial_loss(vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return True
    cells = len(vectors[0])
    outcome = maximize([1] * len(vectors),
                       [([g[w] for g in vectors], Relation.LE, 0) for w in range(cells)])
    return not outcome.exceeds(0)


def _in_generated(vectors: Sequence[Vector], f: Vector) -> bool:
    """f in posi(G u L+)"""
    if all(x == 0 for x in f):
        return False
    if _nonnegative(f):
        return True
    if not vectors:
        return False

    outcome = maximize([1] * len(vectors),
                       [([g[w] for g in vectors], Relation.LE, f[w]) for w in range(len(f))])
    return outcome.exceeds(0)


def _event_margin(a: EventSet, vectors: Sequence[Vector], f: Vector) -> bool:
    """True iff some combination of generators leaves f - sum > 0 on all of A."""
    k = len(vectors)
    outcome = maximize([0] * k + [1],
                       [([g[w] for g in vectors] + [1], Relation.LE, f[w]) for w in a.indices()],
                       free_variables=[k])
    return outcome.exceeds(0)


def _closed_contains(vectors: Sequence[Vector], f: Vector, rows: Optional[Iterable[int]] = None) -> bool:
    """f in the closed cone generated by G and the unit gambles, checked on rows only if given."""
    rows = range(len(f)) if rows is None else list(rows)
    if all(f[w] >= 0 for w in rows):
        return True
    if not vectors:
        return False
    outcome = maximize([0] * len(vectors), [([g[w] for g in vectors], Relation.LE, f[w]) for w in rows])
    return not outcome.is_infeasible


def from_assessments(space: Space, gambles: Sequence[Gamble]) -> ConePiece:
    return ConePiece.generated(space, gambles)


def avoids_partial_loss(gambles: Sequence[Gamble]) -> bool:
    if not gambles:
        return True
    return _avoids_partial_loss(_vectors(gambles[0].space, gambles))


def contains(d: ConePiece, f: Gamble) -> bool:
    _check_gamble(d.space, f)
    if d.kind == ConeKind.CONTRADICTION:
        return True
    if d.kind == ConeKind.VACUOUS:
        return f.is_positive()
    if d.kind == ConeKind.GENERATED:
        return _in_generated(d.vectors(), f.values)
    if d.kind == ConeKind.EVENT:
        return f.is_positive() or min(f.values[i] for i in d.event.indices()) > 0

    if f.is_zero():
        return False
    return _in_generated(d.vectors(), f.values) or _event_margin(d.event, d.vectors(), f.values)


def combine(d1: ConePiece, d2: ConePiece) -> ConePiece:
    _check_pieces(d1, d2)
    if d1.is_contradiction or d2.is_contradiction:
        return ConePiece.contradiction(d1.space)
    if d1.is_vacuous:
        return d2
    if d2.is_vacuous:
        return d1

    gambles = d1.generators + d2.generators
    events = [d.event for d in (d1, d2) if d.event is not None]
    if not events:
        return ConePiece.generated(d1.space, gambles)

    event = events[0] if len(events) == 1 else events[0].intersection(events[1])
    return ConePiece.mixed(event, gambles)


def marginal_system(space: Space, vectors: Sequence[Vector], s: Scope,
                     rows_on: Optional[Iterable[int]] = None) -> HRepresentation:
    """
    Homogeneous system over (f_S, lambda) stating lift(f_S) - sum lambda_j g_j >= 0
    on the selected cells of the full scope, with lambda >= 0.
    """
    m = space.cell_count(s)
    k = len(vectors)
    cells = enumerate_cells(space, space.full_scope)
    selected = range(len(cells)) if rows_on is None else rows_on

    rows = []
    for w in selected:
        coefficients = [Fraction(0)] * m + [-g[w] for g in vectors]
        coefficients[space.cell_index(space.restrict_cell(cells[w], space.full_scope, s), s)] += 1
        rows.append(HalfSpace(tuple(coefficients)))
    for j in range(k):
        coefficients = [Fraction(0)] * (m + k)
        coefficients[m + j] = Fraction(1)
        rows.append(HalfSpace(tuple(coefficients)))
    return HRepresentation(m + k, tuple(rows))


def marginal_rays(space: Space, vectors: Sequence[Vector], s: Scope,
                   rows_on: Optional[Iterable[int]] = None) -> List[Gamble]:
    m = space.cell_count(s)
    projected = project_cone(marginal_system(space, vectors, s, rows_on), list(range(m)))
    return [lift(Gamble(space, s, ray), space.full_scope) for ray in extreme_rays(projected)]


def extract(d: ConePiece, s: Scope) -> ConePiece:
    s = d.space.scope(s)
    if s == d.space.full_scope or d.kind in (ConeKind.CONTRADICTION, ConeKind.VACUOUS):
        return d
    if d.kind == ConeKind.EVENT:
        return ConePiece.from_event(cylindrify(d.event, s))

    if d.kind == ConeKind.GENERATED:
        return ConePiece.generated(d.space, marginal_rays(d.space, d.vectors(), s))

    return _extract_mixed(d, s)


def _extract_mixed(d: ConePiece, s: Scope) -> ConePiece:
    """
    Mixed(A, G) restricted to S-measurable gambles. The event is the
    cylinder of A without the S-cells whose negative unit G absorbs on A.
    Generators are the measurable rays of posi(G u L+) plus the rays of the
    projection over A that are strict members of d.
    """
    space = d.space
    vectors = d.vectors()
    rows = d.event.indices()
    cells = enumerate_cells(space, space.full_scope)

    def s_cell(w: int) -> int:
        return space.cell_index(space.restrict_cell(cells[w], space.full_scope, s), s)

    absorbed = set()
    for t in sorted({s_cell(w) for w in rows}):
        negative = lift(Gamble.unit(space, s, t), space.full_scope).scale(-1)
        if _closed_contains(vectors, negative.values, rows):
            absorbed.add(t)
    event = EventSet.from_indices(space, (w for w in cylindrify(d.event, s).indices() if s_cell(w) not in absorbed))

    generators = marginal_rays(space, vectors, s)
    candidates = 0
    for ray in marginal_rays(space, vectors, s, rows):
        values = tuple(v if w in event else Fraction(0) for w, v in enumerate(ray.values))
        if any(v != 0 for v in values) and _event_margin(d.event, vectors, values):
            generators.append(Gamble(space, space.full_scope, values))
            candidates += 1

    logger.debug(f"Mixed extraction to {sorted(s)}: {len(absorbed)} cells left the event, "
                 f"{len(generators) - candidates} measurable rays, {candidates} strict rays")
    return ConePiece.mixed(event, generators)


def _h_representation(d: ConePiece) -> HRepresentation:
    return project_cone(marginal_system(d.space, d.vectors(), d.space.full_scope), list(_cells(d.space)))


def meet(d1: ConePiece, d2: ConePiece) -> ConePiece:
    _check_pieces(d1, d2)
    if d1.is_contradiction:
        return d2
    if d2.is_contradiction:
        return d1
    for d in (d1, d2):
        if d.kind in (ConeKind.EVENT, ConeKind.MIXED):
            raise UnsupportedVariantException(f"meet is not supported for {d.kind} pieces")
    if d1.is_vacuous or d2.is_vacuous:
        return ConePiece.vacuous(d1.space)

    intersection = _h_representation(d1).intersect(_h_representation(d2))
    return ConePiece.generated(d1.space, _gambles(d1.space, extreme_rays(intersection)))


def _event_leq(a: EventSet, d2: ConePiece) -> bool:
    """D_A <= d2 iff every -1_w off A lies in the closure of d2."""
    if d2.kind == ConeKind.EVENT:
        return d2.event.issubset(a)

    vectors = [g.values for g in closed_generators(d2)]
    outside = [i for i in _cells(a.space) if i not in a]
    size = a.size_of_space()
    return all(_closed_contains(vectors, tuple(Fraction(-1) if j == i else Fraction(0) for j in range(size)))
               for i in outside)


def leq(d1: ConePiece, d2: ConePiece) -> bool:
    """D1 <= D2 in the information order, i.e. D1 is a subset of D2."""
    _check_pieces(d1, d2)
    if d2.is_contradiction or d1.is_vacuous:
        return True
    if d1.is_contradiction:
        return False

    if not all(contains(d2, g) for g in d1.generators):
        return False
    if d1.event is not None:
        return _event_leq(d1.event, d2)
    return True


def equals(d1: ConePiece, d2: ConePiece) -> bool:
    if d1 == d2:
        return True
    return leq(d1, d2) and leq(d2, d1)


def is_support(d: ConePiece, s: Scope) -> bool:
    return equals(extract(d, s), d)


def least_support(d: ConePiece) -> Scope:
    if d.kind == ConeKind.MIXED:
        raise UnsupportedVariantException("least_support is not supported for mixed pieces")

    support = d.space.full_scope
    for name in d.space.names:
        candidate = support - {name}
        # extraction never adds information, one direction suffices
        if leq(d, extract(d, candidate)):
            support = candidate
    return support


def is_strictly_desirable(d: ConePiece) -> bool:
    if d.kind in (ConeKind.VACUOUS, ConeKind.EVENT):
        return True
    if d.kind != ConeKind.GENERATED:
        raise UnsupportedVariantException(f"is_strictly_desirable is not defined for {d.kind} pieces")

    vectors = d.vectors()
    k = len(vectors)
    for g in vectors:
        outcome = maximize([0] * k + [1],
                           [([h[w] for h in vectors] + [1], Relation.LE, g[w]) for w in range(len(g))],
                           free_variables=[k])
        if not outcome.exceeds(0):
            return False
    return True


def is_maximal(d: ConePiece) -> bool:
    """
    True iff f or -f is in d for every f != 0. The closure of a maximal piece
    is a half-space. On its boundary hyperplane d only keeps the pointed cone
    posi(G u L+), which covers the hyperplane up to sign only if it is a line.
    """
    if d.is_contradiction:
        return False
    cells = d.space.cell_count(d.space.full_scope)
    if cells == 1:
        return True
    if cells > 2:
        return False

    closed = [g.values for g in closed_generators(d)]
    units = [Gamble.unit(d.space, d.space.full_scope, i).values for i in range(cells)]
    for c in closed + units:
        if _closed_contains(closed, tuple(-v for v in c)):
            boundary = Gamble(d.space, d.space.full_scope, c)
            return contains(d, boundary) or contains(d, boundary.scale(-1))
    return False


def in_closure(d: ConePiece, f: Gamble) -> bool:
    from ipalg.lower_prevision import sigma, tau_bar_contains
    _check_gamble(d.space, f)
    return tau_bar_contains(sigma(d), f)


def closed_generators(d: ConePiece) -> Optional[List[Gamble]]:
    """
    Generators of the closed relaxation of d (units implied), None for the
    contradiction.
    """
    if d.is_contradiction:
        return None
    result = list(d.generators)
    if d.event is not None:
        size = d.event.size_of_space()
        result += [Gamble.unit(d.space, d.space.full_scope, i).scale(-1)
                   for i in range(size) if i not in d.event]
    return result


def lift_to(d: ConePiece, target: Space) -> ConePiece:
    """Cylindrical extension of a piece over a restriction of target onto target."""
    if not d.space.is_restriction_of(target):
        raise SpaceMismatchException(f"{d.space} is not a restriction of {target}")
    if d.space == target:
        return d
    if d.is_contradiction:
        return ConePiece.contradiction(target)
    if d.is_vacuous:
        return ConePiece.vacuous(target)

    label = d.space.full_scope
    gambles = [lift(Gamble(target, label, g.values), target.full_scope) for g in d.generators]
    if d.event is None:
        return ConePiece.generated(target, gambles)

    flags = Gamble(target, label, [1 if i in d.event else 0 for i in _cells(d.space)])
    event = EventSet.from_indices(target, (i for i, v in enumerate(lift(flags, target.full_scope).values) if v))
    return ConePiece.mixed(event, gambles) if gambles else ConePiece.from_event(event)


def project_to(d: ConePiece, target: Space) -> ConePiece:
    """Content of extract(d, label) moved onto the restricted space target."""
    if not target.is_restriction_of(d.space):
        raise SpaceMismatchException(f"{target} is not a restriction of {d.space}")
    if d.space == target:
        return d

    label = target.full_scope
    extracted = extract(d, label)
    if extracted.is_contradiction:
        return ConePiece.contradiction(target)
    if extracted.is_vacuous:
        return ConePiece.vacuous(target)

    gambles = [Gamble(target, label, project_measurable(g, label).values) for g in extracted.generators]
    if extracted.event is None:
        return ConePiece.generated(target, gambles)

    hidden = tuple(axis for axis, name in enumerate(d.space.names) if name not in label)
    flags = extracted.event.array().any(axis=hidden) if hidden else extracted.event.array()
    event = EventSet.from_array(target, np.asarray(flags).reshape(-1))
    return ConePiece.mixed(event, gambles) if gambles else ConePiece.from_event(event)
