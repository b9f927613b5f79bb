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
from typing import Union
from loguru import logger

import ipalg.gamble_cone as cone
import ipalg.lower_prevision as prevision

from ipalg.common.exceptions import ScopeException, SpaceMismatchException, UnsupportedVariantException
from ipalg.gamble_cone import ConePiece
from ipalg.lower_prevision import LowerPrevision
from ipalg.space import Gamble, Scope, Space, lift, project_measurable

Content = Union[ConePiece, LowerPrevision]


class ContentKind(Enum):
    CONE = "cone"
    PREVISION = "prevision"

    def __str__(self):
        return str(self.value)

    @staticmethod
    def from_str(kind: str) -> "ContentKind":
        try:
            return ContentKind(kind)
        except ValueError:
            raise Exception(f"Unknown content kind '{kind}'")

    @staticmethod
    def of(content: Content) -> "ContentKind":
        return ContentKind.CONE if isinstance(content, ConePiece) else ContentKind.PREVISION


@dataclass(frozen=True)
class LabeledPiece:
    """Content stored on the restricted space of its label."""
    parent: Space
    label: Scope
    content: Content

    def __post_init__(self) -> None:
        object.__setattr__(self, "label", self.parent.scope(self.label))
        if self.content.space != self.parent.restrict(self.label):
            raise SpaceMismatchException(f"Content over {self.content.space} does not match label "
                                         f"{sorted(self.label)} of {self.parent}")

    @property
    def kind(self) -> ContentKind:
        return ContentKind.of(self.content)

    @property
    def is_null(self) -> bool:
        return _is_null(self.content)


@dataclass(frozen=True)
class GlobalLabeled:
    """Content over the full space together with a verified support."""
    content: Content
    support: Scope

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", self.content.space.scope(self.support))
        if not _content_equals(_extract(self.content, self.support), self.content):
            raise ScopeException(f"{sorted(self.support)} is not a support of {self.content}")

    @property
    def space(self) -> Space:
        return self.content.space

    @property
    def kind(self) -> ContentKind:
        return ContentKind.of(self.content)


def _is_null(content: Content) -> bool:
    return content.is_contradiction if isinstance(content, ConePiece) else content.is_null


def check_kinds(a: Content, b: Content) -> None:
    if ContentKind.of(a) != ContentKind.of(b):
        raise UnsupportedVariantException(f"Cannot mix {ContentKind.of(a)} and {ContentKind.of(b)} content")


def _combine(a: Content, b: Content) -> Content:
    check_kinds(a, b)
    if isinstance(a, ConePiece):
        return cone.combine(a, b)
    return prevision.combine(a, b)


def _extract(content: Content, s: Scope) -> Content:
    if isinstance(content, ConePiece):
        return cone.extract(content, s)
    return prevision.extract(content, s)


def _content_equals(a: Content, b: Content) -> bool:
    check_kinds(a, b)
    if isinstance(a, ConePiece):
        return cone.equals(a, b)
    return prevision.prevision_equals(a, b)


def _lift(content: Content, target: Space) -> Content:
    if isinstance(content, ConePiece):
        return cone.lift_to(content, target)

    if not content.space.is_restriction_of(target):
        raise SpaceMismatchException(f"{content.space} is not a restriction of {target}")
    if content.space == target:
        return content
    if content.is_null:
        return LowerPrevision.null(target)
    label = content.space.full_scope
    return LowerPrevision.from_generators(target, [lift(Gamble(target, label, g.values), target.full_scope)
                                                   for g in content.generators])


def _project(content: Content, target: Space) -> Content:
    if isinstance(content, ConePiece):
        return cone.project_to(content, target)

    if not target.is_restriction_of(content.space):
        raise SpaceMismatchException(f"{target} is not a restriction of {content.space}")
    if content.space == target:
        return content
    if content.is_null:
        return LowerPrevision.null(target)
    label = target.full_scope
    extracted = prevision.extract(content, label)
    return LowerPrevision.from_generators(target, [Gamble(target, label, project_measurable(g, label).values)
                                                   for g in extracted.generators])


def label(piece: LabeledPiece) -> Scope:
    return piece.label


def null_piece(space: Space, scope: Scope, kind: ContentKind) -> LabeledPiece:
    restricted = space.restrict(space.scope(scope))
    content = ConePiece.contradiction(restricted) if kind == ContentKind.CONE else LowerPrevision.null(restricted)
    return LabeledPiece(space, scope, content)


def unit_piece(space: Space, scope: Scope, kind: ContentKind) -> LabeledPiece:
    restricted = space.restrict(space.scope(scope))
    content = ConePiece.vacuous(restricted) if kind == ContentKind.CONE else LowerPrevision.vacuous(restricted)
    return LabeledPiece(space, scope, content)


def combine_labeled(a: LabeledPiece, b: LabeledPiece) -> LabeledPiece:
    if a.parent != b.parent:
        raise SpaceMismatchException(f"Labeled pieces over {a.parent} and {b.parent}")
    check_kinds(a.content, b.content)

    union = a.label | b.label
    target = a.parent.restrict(union)
    combined = _combine(_lift(a.content, target), _lift(b.content, target))
    if _is_null(combined):
        logger.debug(f"Labeled combination on {sorted(union)} is null")
    return LabeledPiece(a.parent, union, combined)


def project_labeled(piece: LabeledPiece, t: Scope) -> LabeledPiece:
    t = piece.parent.scope(t)
    if not t <= piece.label:
        raise ScopeException(f"Cannot project label {sorted(piece.label)} onto {sorted(t)}")
    if t == piece.label:
        return piece
    return LabeledPiece(piece.parent, t, _project(piece.content, piece.parent.restrict(t)))


def labeled_equals(a: LabeledPiece, b: LabeledPiece) -> bool:
    return a.parent == b.parent and a.label == b.label and _content_equals(a.content, b.content)


def sigma_labeled(piece: LabeledPiece) -> LabeledPiece:
    if piece.kind != ContentKind.CONE:
        raise UnsupportedVariantException("sigma applies to cone content only")
    return LabeledPiece(piece.parent, piece.label, prevision.sigma(piece.content))


def h(g: GlobalLabeled) -> LabeledPiece:
    return LabeledPiece(g.space, g.support, _project(g.content, g.space.restrict(g.support)))


def h_inverse(piece: LabeledPiece) -> GlobalLabeled:
    return GlobalLabeled(_lift(piece.content, piece.parent), piece.label)


def combine_global(a: GlobalLabeled, b: GlobalLabeled) -> GlobalLabeled:
    return GlobalLabeled(_combine(a.content, b.content), a.support | b.support)


def project_global(g: GlobalLabeled, t: Scope) -> GlobalLabeled:
    t = g.space.scope(t)
    if not t <= g.support:
        raise ScopeException(f"Cannot project support {sorted(g.support)} onto {sorted(t)}")
    return GlobalLabeled(_extract(g.content, t), t)


def labeled_piece(space: Space, scope: Scope, content: Content) -> LabeledPiece:
    """Builds a labeled piece from content over the full space, projecting it to scope."""
    scope = space.scope(scope)
    return LabeledPiece(space, scope, _project(content, space.restrict(scope)))


def least_label(piece: LabeledPiece) -> Scope:
    """Smallest sub-label that still supports the content, by greedy removal."""
    support = piece.label
    for name in piece.parent.ordered(piece.label):
        candidate = support - {name}
        if _content_equals(_extract(piece.content, candidate), piece.content):
            support = candidate
    return support
