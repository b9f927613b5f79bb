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

from pathlib import Path

import ipalg

from ipalg.common.exceptions import QueryException, ScopeException
from ipalg.helper.model_helper import parse_model
from ipalg.helper.query_helper import (QueryReport, execute, parse_gamble_argument, parse_scope_argument,
                                       resolve_piece, run, run_queries, summarize)
from ipalg.labeled_algebra import ContentKind
from ipalg.utils.config_tools import load_model

EXAMPLE_MODEL = Path(ipalg.__file__).parent / "assets" / "example_model.json"


@pytest.fixture(scope="module")
def document():
    return load_model(EXAMPLE_MODEL)


def result_of(document, command, *args):
    return execute(document, command, args).result


class TestResolution:
    def test_sigma_prefix(self, document):
        piece = resolve_piece(document, "sigma:favours_a")
        assert piece.kind == ContentKind.PREVISION

    def test_sigma_on_prevision(self, document):
        with pytest.raises(QueryException):
            resolve_piece(document, "sigma:fair_xy")

    def test_unknown(self, document):
        with pytest.raises(QueryException, match="Unknown piece 'nope'"):
            resolve_piece(document, "nope")

    def test_gamble_argument(self, document):
        space = document.labeled("favours_a").content.space
        assert parse_gamble_argument(space, '{"a": "1", "b": "0"}') == parse_gamble_argument(space, {"a": 1, "b": 0})
        with pytest.raises(QueryException):
            parse_gamble_argument(space, "{not json")
        with pytest.raises(QueryException):
            parse_gamble_argument(space, '["a"]')
        with pytest.raises(QueryException):
            parse_gamble_argument(space, {"a": "0.5", "b": "0"})

    def test_scope_argument(self, document):
        assert parse_scope_argument(document.space, "X, Y") == frozenset({"X", "Y"})
        assert parse_scope_argument(document.space, ["Z"]) == frozenset({"Z"})
        with pytest.raises(ScopeException):
            parse_scope_argument(document.space, "W")


class TestCommands:
    def test_coherence(self, document):
        assert result_of(document, "check-coherence", "favours_a") == "coherent"
        assert result_of(document, "check-coherence", "sure_loss") == "incoherent (0 in natural extension)"
        assert result_of(document, "check-coherence", "sigma:sure_loss") == "incoherent (sure loss)"

    def test_previsions(self, document):
        indicator = {"a": "1", "b": "0"}
        assert result_of(document, "prevision", "favours_a_prevision", indicator) == "1/2"
        assert result_of(document, "prevision", "sigma:favours_a", indicator) == "1/2"
        assert result_of(document, "upper", "favours_a_prevision", indicator) == "1"
        assert result_of(document, "prevision", "sigma:sure_loss", indicator) == "+inf"
        assert result_of(document, "upper", "sigma:sure_loss", indicator) is None

    def test_prevision_needs_prevision_piece(self, document):
        with pytest.raises(QueryException, match="sigma:favours_a"):
            result_of(document, "prevision", "favours_a", {"a": "1", "b": "0"})

    def test_contains(self, document):
        assert result_of(document, "contains", "favours_a", {"a": "2", "b": "-1"}) is True
        assert result_of(document, "contains", "favours_a", {"a": "0", "b": "-1"}) is False
        with pytest.raises(QueryException):
            result_of(document, "contains", "fair_xy", {"a|0": "1", "a|1": "1", "b|0": "1", "b|1": "1"})

    def test_combine_and_marginalize(self, document):
        combined = result_of(document, "combine", "favours_a", "y_is_zero")
        assert combined["kind"] == "cone"
        assert combined["label"] == ["X", "Y"]
        assert combined["variant"] == "mixed"
        marginal = result_of(document, "marginalize", "fair_xy", "X")
        assert marginal["label"] == ["X"]
        assert marginal["variant"] == "coherent"

    def test_credal_vertices(self, document):
        vertices = result_of(document, "credal-vertices", "fair_xy")
        assert vertices == [{"a|0": "1/4", "a|1": "1/4", "b|0": "1/4", "b|1": "1/4"}]

    def test_solve_marginal(self, document):
        result = result_of(document, "solve-marginal", "fair_xy", "bounded_yz")
        assert result["verdict"] == "incompatible"
        assert result["method"] == "join tree"
        assert result["rip"] == [2]
        assert result["failing"] == [2]
        assert len(result["marginals"]) == 2

    def test_solve_marginal_without_rip(self):
        cycle = parse_model(json.dumps({
            "variables": {"X": ["0", "1"], "Y": ["0", "1"], "Z": ["0", "1"]},
            "pieces": {
                "xy": {"kind": "event", "label": ["X", "Y"], "cells": ["0|0", "1|1"]},
                "yz": {"kind": "event", "label": ["Y", "Z"], "cells": ["0|0", "1|1"]},
                "xz": {"kind": "event", "label": ["X", "Z"], "cells": ["0|1", "1|0"]}
            }
        }))
        result = result_of(cycle, "solve-marginal", "xy", "yz", "xz")
        assert result == {"verdict": "inconsistent", "method": "global combination", "rip": None, "failing": []}

    def test_compatible(self, document):
        assert result_of(document, "compatible", "fair_xy", "bounded_yz") == {"verdict": "incompatible",
                                                                               "failing": [2]}
        assert result_of(document, "compatible", "favours_a", "sure_loss")["verdict"] == "inconsistent"

    def test_rip(self, document):
        assert result_of(document, "rip", ["X", "Y"], ["Y", "Z"], ["Z", "X"]) == {"answer": "RIP: no", "failing": 1}
        assert result_of(document, "rip", "X,Y", "Y,Z") == {"answer": "RIP: yes", "parents": [2]}

    def test_sigma(self, document):
        summary = result_of(document, "sigma", "favours_a")
        assert summary["kind"] == "prevision"
        assert summary["generators"] == [{"a": "1", "b": "-1"}]

    def test_summary_of_event(self, document):
        summary = summarize(document.labeled("y_is_zero"))
        assert summary == {"kind": "cone", "label": ["Y"], "variant": "event", "cells": ["0"]}


class TestExecution:
    def test_unknown_command(self, document):
        with pytest.raises(QueryException, match="Unknown command"):
            execute(document, "frobnicate", [])

    def test_arity(self, document):
        with pytest.raises(QueryException, match="expects 2"):
            execute(document, "prevision", ["favours_a_prevision"])

    def test_statistics_recorded(self, document):
        entry = execute(document, "prevision", ["favours_a_prevision", {"a": "1", "b": "0"}])
        assert entry.statistics["lp_solves"] >= 1

    def test_run_queries(self, document):
        report = run_queries(document)
        assert [entry.kind for entry in report.entries] == [q.command for q in document.queries]
        results = [entry.result for entry in report.entries]
        assert results[:6] == ["coherent", "incoherent (0 in natural extension)", "1/2", "1/2", "1", True]
        assert results[7]["verdict"] == "incompatible"
        assert results[8] == {"answer": "RIP: no", "failing": 1}

    def test_report_is_plain_json(self, document):
        encoded = run(document, "check-coherence", ["favours_a"]).as_json()
        decoded = json.loads(encoded)
        assert decoded["entries"][0]["kind"] == "check-coherence"
        assert decoded["entries"][0]["result"] == "coherent"
        assert "py/object" not in encoded

    def test_empty_report(self):
        assert QueryReport().entries == []
