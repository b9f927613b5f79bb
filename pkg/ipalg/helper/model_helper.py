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

from enum import Enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
from loguru import logger

from ipalg.common.exceptions import Diagnostic, ModelParseException, ScopeException
from ipalg.gamble_cone import ConePiece
from ipalg.labeled_algebra import LabeledPiece
from ipalg.lower_prevision import LowerPrevision, combine, natural_extension_from_bounds
from ipalg.set_algebra import EventSet
from ipalg.space import Cell, Gamble, Space, enumerate_cells
from ipalg.utils.config_tools import schema_diagnostics
from ipalg.utils.rationals import format_rational, parse_rational


class PieceKind(Enum):
    CONE = "cone"
    PREVISION = "prevision"
    EVENT = "event"

    def __str__(self):
        return str(self.value)

    @staticmethod
    def from_str(kind: str) -> "PieceKind":
        try:
            return PieceKind(kind)
        except ValueError:
            raise Exception(f"Unknown piece kind '{kind}'")


@dataclass(frozen=True)
class Assessment:
    gamble: Gamble
    bound: Fraction
    upper: Optional[bool] = None


@dataclass(frozen=True)
class PieceDefinition:
    """A piece as declared in the model; absent keys stay None."""
    name: str
    kind: PieceKind
    label: Tuple[str, ...]
    generators: Optional[Tuple[Gamble, ...]] = None
    assessments: Optional[Tuple[Assessment, ...]] = None
    cells: Optional[Tuple[Cell, ...]] = None
    mass: Optional[Gamble] = None

    def build(self, space: Space) -> LabeledPiece:
        restricted = space.restrict(frozenset(self.label))

        if self.kind == PieceKind.EVENT:
            content = ConePiece.from_event(EventSet.from_cells(restricted, self.cells))
        elif self.kind == PieceKind.CONE:
            generators = self.generators or ()
            if self.cells is not None:
                content = ConePiece.mixed(EventSet.from_cells(restricted, self.cells), generators)
            else:
                content = ConePiece.generated(restricted, generators)
        elif self.mass is not None:
            content = LowerPrevision.linear(restricted, self.mass.values)
        else:
            content = combine(LowerPrevision.from_generators(restricted, self.generators or ()),
                              natural_extension_from_bounds(restricted, [(a.gamble, a.bound, bool(a.upper))
                                                                         for a in self.assessments or ()]))

        logger.trace(f"Built piece '{self.name}' on {list(self.label)}: {content}")
        return LabeledPiece(space, frozenset(self.label), content)


@dataclass(frozen=True)
class QueryDefinition:
    command: str
    args: Optional[Tuple[Any, ...]] = None


@dataclass
class ModelDocument:
    space: Space
    pieces: Dict[str, PieceDefinition]
    queries: Optional[List[QueryDefinition]] = None
    _built: Dict[str, LabeledPiece] = field(default_factory=dict, repr=False, compare=False)

    def labeled(self, name: str) -> LabeledPiece:
        if name not in self.pieces:
            raise KeyError(name)
        if name not in self._built:
            self._built[name] = self.pieces[name].build(self.space)
        return self._built[name]


def _reject_duplicates(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    result = {}
    for key, value in pairs:
        if key in result:
            raise ValueError(f"duplicate key '{key}'")
        result[key] = value
    return result


class _SemanticParser:
    def __init__(self) -> None:
        self.diagnostics: List[Diagnostic] = []

    def error(self, message: str, path: str) -> None:
        self.diagnostics.append(Diagnostic(message, path))

    def rational(self, value: Any, path: str) -> Optional[Fraction]:
        try:
            return parse_rational(value)
        except ValueError as ex:
            self.error(str(ex), path)
            return None

    def gamble(self, space: Space, mapping: Dict[str, Any], path: str) -> Optional[Gamble]:
        scope = space.full_scope
        values: Dict[int, Fraction] = {}
        valid = True
        for key, raw in mapping.items():
            try:
                index = space.cell_index(space.parse_cell_label(key, scope), scope)
            except ScopeException as ex:
                self.error(str(ex), f"{path}.{key}")
                valid = False
                continue
            value = self.rational(raw, f"{path}.{key}")
            if value is None:
                valid = False
                continue
            values[index] = value

        expected = space.cell_count(scope)
        if valid and len(values) != expected:
            missing = [space.cell_label(c, scope) for i, c in enumerate(enumerate_cells(space, scope))
                       if i not in values]
            self.error(f"gamble must cover all {expected} cells, missing {missing}", path)
            valid = False

        if not valid:
            return None
        return Gamble(space, scope, tuple(values[i] for i in range(expected)))

    def gambles(self, space: Space, mappings: List[Dict[str, Any]], path: str) -> Tuple[Gamble, ...]:
        parsed = [self.gamble(space, m, f"{path}[{i}]") for i, m in enumerate(mappings)]
        return tuple(g for g in parsed if g is not None)

    def piece(self, space: Space, name: str, raw: Dict[str, Any]) -> Optional[PieceDefinition]:
        path = f"$.pieces.{name}"
        kind = PieceKind.from_str(raw["kind"])
        label = tuple(raw["label"])

        undeclared = [v for v in label if v not in space.names]
        for index, variable in enumerate(label):
            if variable in undeclared:
                self.error(f"undeclared variable '{variable}'", f"{path}.label[{index}]")
        if undeclared:
            return None

        allowed = {PieceKind.EVENT: {"cells"},
                   PieceKind.CONE: {"generators", "cells"},
                   PieceKind.PREVISION: {"generators", "assessments", "mass"}}[kind]
        for key in ("generators", "assessments", "cells", "mass"):
            if key in raw and key not in allowed:
                self.error(f"'{key}' is not allowed for {kind} pieces", f"{path}.{key}")
        if kind == PieceKind.EVENT and "cells" not in raw:
            self.error("event pieces need 'cells'", path)
        if "mass" in raw and ("generators" in raw or "assessments" in raw):
            self.error("'mass' cannot be combined with generators or assessments", f"{path}.mass")

        restricted = space.restrict(frozenset(label))
        generators = self.gambles(restricted, raw["generators"], f"{path}.generators") \
            if "generators" in raw else None

        assessments = None
        if "assessments" in raw:
            assessments = []
            for index, item in enumerate(raw["assessments"]):
                gamble = self.gamble(restricted, item["gamble"], f"{path}.assessments[{index}].gamble")
                bound = self.rational(item["bound"], f"{path}.assessments[{index}].bound")
                if gamble is not None and bound is not None:
                    assessments.append(Assessment(gamble, bound, item.get("upper")))
            assessments = tuple(assessments)

        cells = None
        if "cells" in raw:
            cells = []
            for index, label_text in enumerate(raw["cells"]):
                try:
                    cells.append(restricted.parse_cell_label(label_text, restricted.full_scope))
                except ScopeException as ex:
                    self.error(str(ex), f"{path}.cells[{index}]")
            cells = tuple(cells)

        mass = None
        if "mass" in raw:
            mass = self.gamble(restricted, raw["mass"], f"{path}.mass")
            if mass is not None and (any(v < 0 for v in mass.values) or sum(mass.values) != 1):
                self.error("mass function must be nonnegative and sum to 1", f"{path}.mass")

        return PieceDefinition(name, kind, label, generators, assessments, cells, mass)


def parse_model(text: str) -> ModelDocument:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as ex:
        raise ModelParseException([Diagnostic(ex.msg, line=ex.lineno, column=ex.colno)])
    except ValueError as ex:
        raise ModelParseException([Diagnostic(str(ex))])

    diagnostics = schema_diagnostics(raw)
    if diagnostics:
        raise ModelParseException(diagnostics)

    parser = _SemanticParser()
    try:
        space = Space.from_dict(raw["variables"])
    except ValueError as ex:
        raise ModelParseException([Diagnostic(str(ex), "$.variables")])

    pieces = {}
    for name, piece in raw["pieces"].items():
        definition = parser.piece(space, name, piece)
        if definition is not None:
            pieces[name] = definition

    queries = None
    if "queries" in raw:
        queries = [QueryDefinition(q["command"], tuple(q["args"]) if "args" in q else None)
                   for q in raw["queries"]]

    if parser.diagnostics:
        raise ModelParseException(parser.diagnostics)
    return ModelDocument(space, pieces, queries)


def gamble_to_map(gamble: Gamble) -> Dict[str, str]:
    return {gamble.space.cell_label(cell, gamble.scope): format_rational(value)
            for cell, value in zip(enumerate_cells(gamble.space, gamble.scope), gamble.values)}


def _piece_to_dict(definition: PieceDefinition, space: Space) -> Dict[str, Any]:
    result: Dict[str, Any] = {"kind": str(definition.kind), "label": list(definition.label)}
    if definition.generators is not None:
        result["generators"] = [gamble_to_map(g) for g in definition.generators]
    if definition.assessments is not None:
        result["assessments"] = []
        for assessment in definition.assessments:
            item = {"gamble": gamble_to_map(assessment.gamble), "bound": format_rational(assessment.bound)}
            if assessment.upper is not None:
                item["upper"] = assessment.upper
            result["assessments"].append(item)
    if definition.cells is not None:
        restricted = space.restrict(frozenset(definition.label))
        result["cells"] = [restricted.cell_label(c, restricted.full_scope) for c in definition.cells]
    if definition.mass is not None:
        result["mass"] = gamble_to_map(definition.mass)
    return result


def serialize_model(document: ModelDocument) -> str:
    result: Dict[str, Any] = {
        "variables": {v.name: list(v.domain) for v in document.space.variables},
        "pieces": {name: _piece_to_dict(d, document.space) for name, d in document.pieces.items()}
    }
    if document.queries is not None:
        result["queries"] = []
        for query in document.queries:
            item: Dict[str, Any] = {"command": query.command}
            if query.args is not None:
                item["args"] = list(query.args)
            result["queries"].append(item)
    return json.dumps(result, indent=2, ensure_ascii=False) + "\n"


def gamble_from_map(space: Space, mapping: Dict[str, Any], path: str = "$") -> Gamble:
    """Parses a cell-label map over the full scope of space, raising on any diagnostic."""
    parser = _SemanticParser()
    gamble = parser.gamble(space, mapping, path)
    if parser.diagnostics:
        raise ModelParseException(parser.diagnostics)
    return gamble
