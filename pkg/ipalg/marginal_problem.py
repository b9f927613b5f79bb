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

import networkx as nx

from enum import Enum
from functools import reduce
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union
from loguru import logger

from ipalg.common.exceptions import InternalInvariantViolation, PreconditionViolation, SpaceMismatchException
from ipalg.labeled_algebra import (LabeledPiece, combine_labeled, labeled_equals, least_label,
                                   project_labeled, check_kinds)
from ipalg.space import Scope


@dataclass(frozen=True)
class KnowledgeBase:
    pieces: Tuple[LabeledPiece, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise ValueError("A knowledge base needs at least one piece")
        first = self.pieces[0]
        for piece in self.pieces[1:]:
            if piece.parent != first.parent:
                raise SpaceMismatchException(f"Knowledge base mixes spaces {first.parent} and {piece.parent}")
            check_kinds(first.content, piece.content)

    @property
    def scopes(self) -> List[Scope]:
        return [piece.label for piece in self.pieces]

    def __len__(self) -> int:
        return len(self.pieces)


@dataclass(frozen=True)
class RipCertificate:
    """parents[i] = p(i), 0-based, for every piece but the last."""
    parents: Tuple[int, ...]

    def one_based(self) -> List[int]:
        return [p + 1 for p in self.parents]


@dataclass(frozen=True)
class RipFailure:
    index: int


class VerdictKind(Enum):
    COMPATIBLE = "compatible"
    INCONSISTENT = "inconsistent"
    INCOMPATIBLE = "incompatible"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class CompatibilityVerdict:
    kind: VerdictKind
    witness: Optional[LabeledPiece] = None
    failing: Tuple[int, ...] = ()

    @property
    def is_compatible(self) -> bool:
        return self.kind == VerdictKind.COMPATIBLE


def satisfies_rip(scopes: Sequence[Scope]) -> Union[RipCertificate, RipFailure]:
    parents = []
    for i in range(len(scopes) - 1):
        rest = frozenset().union(*scopes[i + 1:])
        target = scopes[i] & rest
        parent = next((j for j in range(i + 1, len(scopes)) if scopes[i] & scopes[j] == target), None)
        if parent is None:
            logger.debug(f"Running intersection property fails at scope {i}: {sorted(target)}")
            return RipFailure(i)
        parents.append(parent)
    return RipCertificate(tuple(parents))


def is_valid_certificate(scopes: Sequence[Scope], cert: RipCertificate) -> bool:
    if len(cert.parents) != max(len(scopes) - 1, 0):
        return False
    for i, parent in enumerate(cert.parents):
        if not i < parent < len(scopes):
            return False
        if scopes[i] & scopes[parent] != scopes[i] & frozenset().union(*scopes[i + 1:]):
            return False
    return True


def pairwise_compatible(a: LabeledPiece, b: LabeledPiece) -> bool:
    shared = a.label & b.label
    return labeled_equals(project_labeled(a, shared), project_labeled(b, shared))


def combine_all(kb: KnowledgeBase) -> LabeledPiece:
    return reduce(combine_labeled, kb.pieces)


def check_compatibility(kb: KnowledgeBase) -> CompatibilityVerdict:
    combined = combine_all(kb)
    if combined.is_null:
        return CompatibilityVerdict(VerdictKind.INCONSISTENT)

    failing = tuple(i for i, piece in enumerate(kb.pieces)
                    if not labeled_equals(project_labeled(combined, piece.label), piece))
    if failing:
        return CompatibilityVerdict(VerdictKind.INCOMPATIBLE, failing=failing)
    return CompatibilityVerdict(VerdictKind.COMPATIBLE, witness=combined)


def build_join_tree(scopes: Sequence[Scope], cert: RipCertificate) -> nx.DiGraph:
    tree = nx.DiGraph()
    for i, scope in enumerate(scopes):
        tree.add_node(i, scope=scope)
    for i, parent in enumerate(cert.parents):
        tree.add_edge(i, parent, separator=scopes[i] & scopes[parent])
    return tree


def join_tree_marginals(kb: KnowledgeBase, cert: RipCertificate) -> List[LabeledPiece]:
    """
    Marginals of the combination of all pieces onto each label, by collect
    and distribute passes along the certificate tree. No intermediate
    content is larger than a node label.
    """
    if not is_valid_certificate(kb.scopes, cert):
        raise PreconditionViolation(f"Invalid RIP certificate {cert.one_based()}")

    tree = build_join_tree(kb.scopes, cert)
    order = list(nx.lexicographical_topological_sort(tree))
    states = list(kb.pieces)

    for node in order:
        for parent in tree.successors(node):
            message = project_labeled(states[node], tree.edges[node, parent]["separator"])
            states[parent] = combine_labeled(states[parent], message)
            logger.trace(f"Collect message {node + 1} -> {parent + 1} on {sorted(message.label)}")

    for node in reversed(order):
        for parent in tree.successors(node):
            message = project_labeled(states[parent], tree.edges[node, parent]["separator"])
            states[node] = combine_labeled(states[node], message)
            logger.trace(f"Distribute message {parent + 1} -> {node + 1} on {sorted(message.label)}")

    return states


def tightened_marginals(kb: KnowledgeBase, cert: RipCertificate) -> List[Tuple[LabeledPiece, bool]]:
    """Join-tree marginals, each flagged with whether it still equals its input piece."""
    return [(marginal, labeled_equals(marginal, piece))
            for marginal, piece in zip(join_tree_marginals(kb, cert), kb.pieces)]


def rip_theorem_check(kb: KnowledgeBase, cert: RipCertificate) -> CompatibilityVerdict:
    if not is_valid_certificate(kb.scopes, cert):
        raise PreconditionViolation(f"Invalid RIP certificate {cert.one_based()}")

    for i, j in combinations(range(len(kb)), 2):
        if not pairwise_compatible(kb.pieces[i], kb.pieces[j]):
            raise PreconditionViolation(f"Pieces {i + 1} and {j + 1} are not pairwise compatible")

    combined = combine_all(kb)
    if combined.is_null:
        raise PreconditionViolation("Knowledge base is inconsistent")

    for i, piece in enumerate(kb.pieces):
        if not labeled_equals(project_labeled(combined, piece.label), piece):
            raise InternalInvariantViolation(f"Marginal of the combination differs from piece {i + 1} "
                                             f"despite RIP and pairwise compatibility")

    return CompatibilityVerdict(VerdictKind.COMPATIBLE, witness=combined)


def reduce_to_least_supports(kb: KnowledgeBase) -> KnowledgeBase:
    return KnowledgeBase(tuple(project_labeled(piece, least_label(piece)) for piece in kb.pieces))
