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
import pytest

from fractions import Fraction
from pathlib import Path

import ipalg

from ipalg.common.exceptions import ModelParseException
from ipalg.gamble_cone import ConeKind
from ipalg.helper.model_helper import PieceKind, gamble_from_map, parse_model, serialize_model
from ipalg.lower_prevision import is_linear, prevision
from ipalg.space import Gamble, Space
from ipalg.utils.config_tools import load_model

EXAMPLE_MODEL = Path(ipalg.__file__).parent / "assets" / "example_model.json"


def model(pieces, variables=None, **extra) -> str:
    document = {"variables": variables or {"X": ["a", "b"], "Y": ["0", "1"]}, "pieces": pieces}
    document.update(extra)
    return json.dumps(document)


def diagnostics_of(text: str):
    with pytest.raises(ModelParseException) as info:
        parse_model(text)
    return info.value.diagnostics


class TestParsing:
    def test_example_model(self):
        document = load_model(EXAMPLE_MODEL)
        assert set(document.pieces) == {"favours_a", "favours_a_prevision", "sure_loss", "fair_xy",
                                        "bounded_yz", "y_is_zero"}
        assert document.pieces["y_is_zero"].kind == PieceKind.EVENT
        assert len(document.queries) == 9

    def test_minimal_piece_is_vacuous(self):
        document = parse_model(model({"empty": {"kind": "cone", "label": []}}))
        piece = document.labeled("empty")
        assert piece.label == frozenset()
        assert piece.content.is_vacuous

    def test_built_pieces(self):
        document = load_model(EXAMPLE_MODEL)
        assert document.labeled("sure_loss").is_null
        assert is_linear(document.labeled("fair_xy").content)
        assert document.labeled("y_is_zero").content.kind == ConeKind.EVENT
        bounded = document.labeled("bounded_yz").content
        assert prevision(bounded, Gamble.on(bounded.space, [1, 1, 0, 0])) == Fraction(1, 2)
        assert document.labeled("favours_a") is document.labeled("favours_a")

    def test_unknown_piece(self):
        with pytest.raises(KeyError):
            load_model(EXAMPLE_MODEL).labeled("missing")

    def test_queries_optional(self):
        assert parse_model(model({})).queries is None


class TestDiagnostics:
    def test_decimal_rejected(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["X"],
                                                  "generators": [{"a": "0.5", "b": "-1"}]}}))
        assert len(diagnostics) == 1
        assert "exact rational required" in diagnostics[0].message
        assert diagnostics[0].path == "$.pieces.p.generators[0].a"

    def test_float_rejected(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["X"],
                                                  "generators": [{"a": 0.5, "b": -1}]}}))
        assert "exact rational required" in diagnostics[0].message

    def test_undeclared_variable(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["X", "W"]}}))
        assert [(d.path, d.message) for d in diagnostics] == [("$.pieces.p.label[1]", "undeclared variable 'W'")]

    def test_duplicate_key(self):
        text = '{"variables": {"X": ["a", "b"], "X": ["c"]}, "pieces": {}}'
        assert "duplicate key 'X'" in diagnostics_of(text)[0].message

    def test_unknown_key(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["X"], "weight": 1}}))
        assert diagnostics[0].path == "$.pieces.p"
        assert "weight" in diagnostics[0].message

    def test_syntax_error_has_position(self):
        diagnostics = diagnostics_of('{"variables": {},\n "pieces": }')
        assert diagnostics[0].line == 2
        assert diagnostics[0].column is not None

    def test_incomplete_gamble(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["X"], "generators": [{"a": "1"}]}}))
        assert "missing ['b']" in diagnostics[0].message

    def test_unknown_cell(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "event", "label": ["X"], "cells": ["c"]}}))
        assert diagnostics[0].path == "$.pieces.p.cells[0]"

    def test_event_needs_cells(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "event", "label": ["X"]}}))
        assert diagnostics[0].message == "event pieces need 'cells'"

    def test_key_not_allowed_for_kind(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "event", "label": ["X"], "cells": ["a"],
                                                  "generators": []}}))
        assert diagnostics[0].path == "$.pieces.p.generators"

    def test_mass_must_be_distribution(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "prevision", "label": ["X"],
                                                  "mass": {"a": "1/2", "b": "1/3"}}}))
        assert diagnostics[0].path == "$.pieces.p.mass"

    def test_diagnostics_accumulate(self):
        diagnostics = diagnostics_of(model({"p": {"kind": "cone", "label": ["W"]},
                                            "q": {"kind": "cone", "label": ["X"],
                                                  "generators": [{"a": "x", "b": "1"}]}}))
        assert len(diagnostics) == 2

    def test_empty_domain(self):
        diagnostics = diagnostics_of(model({}, variables={"X": []}))
        assert diagnostics[0].path == "$.variables.X"


class TestGambleMaps:
    def test_parse(self):
        space = Space.from_dict({"X": ["a", "b"]})
        assert gamble_from_map(space, {"b": "-1/2", "a": 3}) == Gamble.on(space, [3, Fraction(-1, 2)])

    def test_invalid(self):
        space = Space.from_dict({"X": ["a", "b"]})
        with pytest.raises(ModelParseException):
            gamble_from_map(space, {"a": "1", "c": "2"})


class TestSerialization:
    def test_canonical_form_is_stable(self):
        text = serialize_model(load_model(EXAMPLE_MODEL))
        assert serialize_model(parse_model(text)) == text
        assert text.endswith("}\n")

    def test_rationals_are_canonical(self):
        text = serialize_model(parse_model(model({"p": {"kind": "cone", "label": ["X"],
                                                        "generators": [{"a": 2, "b": "-4/2"}]}})))
        assert json.loads(text)["pieces"]["p"]["generators"] == [{"a": "2", "b": "-2"}]

    def test_upper_flag_kept(self):
        document = load_model(EXAMPLE_MODEL)
        assessments = json.loads(serialize_model(document))["pieces"]["bounded_yz"]["assessments"]
        assert "upper" not in assessments[0]
        assert assessments[1]["upper"] is True
