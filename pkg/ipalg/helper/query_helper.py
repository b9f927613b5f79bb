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

import json

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Union
from loguru import logger

import ipalg.gamble_cone as cone
import ipalg.lower_prevision as prevision

from ipalg.constants import SIGMA_REFERENCE_PREFIX
from ipalg.common.exceptions import ModelParseException, QueryException
from ipalg.common.interfaces import JSONMessage
from ipalg.gamble_cone import ConePiece
from ipalg.helper.model_helper import ModelDocument, gamble_from_map, gamble_to_map
from ipalg.labeled_algebra import (ContentKind, LabeledPiece, combine_labeled, project_labeled,
                                   sigma_labeled)
from ipalg.marginal_problem import (KnowledgeBase, RipCertificate, VerdictKind, check_compatibility,
                                    combine_all, pairwise_compatible, rip_theorem_check, satisfies_rip,
                                    tightened_marginals)
from ipalg.space import Gamble, Scope, Space
from ipalg.utils.rationals import format_rational
from ipalg.utils.statistics import collect_statistics


@dataclass
class QueryEntry:
    kind: str
    inputs: List[Any]
    result: Any
    statistics: Dict[str, int]


@dataclass
class QueryReport(JSONMessage):
    entries: List[QueryEntry] = field(default_factory=list)


def resolve_piece(document: ModelDocument, reference: str) -> LabeledPiece:
    """A piece by name, or sigma:NAME for the lower prevision induced by a cone piece."""
    if not isinstance(reference, str):
        raise QueryException(f"Piece reference must be a name, got {reference!r}")

    apply_sigma = reference.startswith(SIGMA_REFERENCE_PREFIX)
    name = reference[len(SIGMA_REFERENCE_PREFIX):] if apply_sigma else reference
    try:
        piece = document.labeled(name)
    except KeyError:
        raise QueryException(f"Unknown piece '{name}'")

    if not apply_sigma:
        return piece
    if piece.kind != ContentKind.CONE:
        raise QueryException(f"'{reference}' applies sigma to the prevision piece '{name}'")
    return sigma_labeled(piece)


def parse_gamble_argument(space: Space, argument: Union[str, Dict[str, Any]]) -> Gamble:
    if isinstance(argument, str):
        try:
            argument = json.loads(argument)
        except json.JSONDecodeError as ex:
            raise QueryException(f"Gamble argument is not valid JSON: {ex.msg}")
    if not isinstance(argument, dict):
        raise QueryException(f"Gamble argument must map cell labels to rationals, got {argument!r}")

    try:
        return gamble_from_map(space, argument)
    except ModelParseException as ex:
        raise QueryException(f"Malformed gamble argument: {ex}")


def parse_scope_argument(space: Space, argument: Union[str, Sequence[str]]) -> Scope:
    if isinstance(argument, str):
        names = [name.strip() for name in argument.split(",") if name.strip()]
    elif isinstance(argument, (list, tuple)):
        names = list(argument)
    else:
        raise QueryException(f"Scope argument must be a list or a comma separated string, got {argument!r}")
    return space.scope(names)


def summarize(piece: LabeledPiece) -> Dict[str, Any]:
    content = piece.content
    result: Dict[str, Any] = {"kind": str(piece.kind), "label": list(piece.parent.ordered(piece.label))}

    if isinstance(content, ConePiece):
        result["variant"] = str(content.kind)
        if content.event is not None:
            result["cells"] = [content.space.cell_label(c, content.space.full_scope) for c in content.event.cells()]
    elif content.is_null:
        result["variant"] = "null"
    else:
        result["variant"] = "vacuous" if content.is_vacuous else "coherent"

    if content.generators:
        result["generators"] = [gamble_to_map(g) for g in content.generators]
    return result


def _require_prevision(piece: LabeledPiece, reference: str) -> None:
    if piece.kind != ContentKind.PREVISION:
        raise QueryException(f"'{reference}' is a cone piece; use '{SIGMA_REFERENCE_PREFIX}{reference}'")


def _require_cone(piece: LabeledPiece, reference: str) -> None:
    if piece.kind != ContentKind.CONE:
        raise QueryException(f"'{reference}' is not a cone piece")


def _check_coherence(document: ModelDocument, reference: str) -> str:
    piece = resolve_piece(document, reference)
    if piece.kind == ContentKind.CONE:
        return "incoherent (0 in natural extension)" if piece.is_null else "coherent"
    return "incoherent (sure loss)" if piece.is_null else "coherent"


def _prevision(document: ModelDocument, reference: str, gamble: Any) -> str:
    piece = resolve_piece(document, reference)
    _require_prevision(piece, reference)
    value = prevision.prevision(piece.content, parse_gamble_argument(piece.content.space, gamble))
    return "+inf" if piece.is_null else format_rational(value)


def _upper(document: ModelDocument, reference: str, gamble: Any) -> Optional[str]:
    piece = resolve_piece(document, reference)
    _require_prevision(piece, reference)
    value = prevision.upper_prevision(piece.content, parse_gamble_argument(piece.content.space, gamble))
    return None if value is None else format_rational(value)


def _contains(document: ModelDocument, reference: str, gamble: Any) -> bool:
    piece = resolve_piece(document, reference)
    _require_cone(piece, reference)
    return cone.contains(piece.content, parse_gamble_argument(piece.content.space, gamble))


def _combine(document: ModelDocument, first: str, second: str) -> Dict[str, Any]:
    return summarize(combine_labeled(resolve_piece(document, first), resolve_piece(document, second)))


def _marginalize(document: ModelDocument, reference: str, scope: Any) -> Dict[str, Any]:
    piece = resolve_piece(document, reference)
    return summarize(project_labeled(piece, parse_scope_argument(document.space, scope)))


def _credal_vertices(document: ModelDocument, reference: str) -> List[Dict[str, str]]:
    piece = resolve_piece(document, reference)
    _require_prevision(piece, reference)
    space = piece.content.space
    return [gamble_to_map(Gamble(space, space.full_scope, vertex))
            for vertex in prevision.credal_vertices(piece.content).vertices]


def _knowledge_base(document: ModelDocument, references: Sequence[str]) -> KnowledgeBase:
    if not references:
        raise QueryException("At least one piece is required")
    return KnowledgeBase(tuple(resolve_piece(document, r) for r in references))


def _compatible(document: ModelDocument, *references: str) -> Dict[str, Any]:
    verdict = check_compatibility(_knowledge_base(document, references))
    return {"verdict": str(verdict.kind), "failing": [i + 1 for i in verdict.failing]}


def _solve_marginal(document: ModelDocument, *references: str) -> Dict[str, Any]:
    kb = _knowledge_base(document, references)
    certificate = satisfies_rip(kb.scopes)

    if isinstance(certificate, RipCertificate):
        logger.debug(f"Solving marginal problem on the join tree {certificate.one_based()}")
        tightened = tightened_marginals(kb, certificate)
        if any(m.is_null for m, _ in tightened):
            kind, failing = VerdictKind.INCONSISTENT, []
        else:
            failing = [i + 1 for i, (_, equal) in enumerate(tightened) if not equal]
            kind = VerdictKind.INCOMPATIBLE if failing else VerdictKind.COMPATIBLE

        if all(pairwise_compatible(kb.pieces[i], kb.pieces[j])
               for i, j in combinations(range(len(kb)), 2)) and kind != VerdictKind.INCONSISTENT:
            kind = rip_theorem_check(kb, certificate).kind

        return {"verdict": str(kind), "method": "join tree", "rip": certificate.one_based(),
                "failing": failing, "marginals": [summarize(m) for m, _ in tightened]}

    logger.debug(f"No RIP ordering for the given order, combining {len(kb)} pieces globally")
    verdict = check_compatibility(kb)
    result = {"verdict": str(verdict.kind), "method": "global combination", "rip": None,
              "failing": [i + 1 for i in verdict.failing]}
    if verdict.kind != VerdictKind.INCONSISTENT:
        combined = combine_all(kb)
        result["marginals"] = [summarize(project_labeled(combined, p.label)) for p in kb.pieces]
    return result


def _rip(document: ModelDocument, *scopes: Any) -> Dict[str, Any]:
    if not scopes:
        raise QueryException("At least one scope is required")
    outcome = satisfies_rip([parse_scope_argument(document.space, s) for s in scopes])
    if isinstance(outcome, RipCertificate):
        return {"answer": "RIP: yes", "parents": outcome.one_based()}
    return {"answer": "RIP: no", "failing": outcome.index + 1}


def _sigma(document: ModelDocument, reference: str) -> Dict[str, Any]:
    piece = resolve_piece(document, reference)
    _require_cone(piece, reference)
    return summarize(sigma_labeled(piece))


COMMANDS: Dict[str, Callable[..., Any]] = {
    "check-coherence": _check_coherence,
    "prevision": _prevision,
    "upper": _upper,
    "contains": _contains,
    "combine": _combine,
    "marginalize": _marginalize,
    "credal-vertices": _credal_vertices,
    "compatible": _compatible,
    "solve-marginal": _solve_marginal,
    "rip": _rip,
    "sigma": _sigma,
}

_ARITY = {
    "check-coherence": 1, "prevision": 2, "upper": 2, "contains": 2, "combine": 2,
    "marginalize": 2, "credal-vertices": 1, "sigma": 1,
}


def execute(document: ModelDocument, command: str, args: Sequence[Any]) -> QueryEntry:
    if command not in COMMANDS:
        raise QueryException(f"Unknown command '{command}'")
    args = list(args)
    if command in _ARITY and len(args) != _ARITY[command]:
        raise QueryException(f"'{command}' expects {_ARITY[command]} argument(s), got {len(args)}")

    logger.debug(f"Running query {command} {args}")
    with collect_statistics() as statistics:
        result = COMMANDS[command](document, *args)
    logger.trace(f"Query {command} finished: {statistics.as_dict()}")
    return QueryEntry(command, args, result, statistics.as_dict())


def run(document: ModelDocument, command: str, args: Sequence[Any]) -> QueryReport:
    return QueryReport([execute(document, command, args)])


def run_queries(document: ModelDocument) -> QueryReport:
    if not document.queries:
        logger.warning("Model declares no queries")
        return QueryReport()
    return QueryReport([execute(document, q.command, q.args or ()) for q in document.queries])
