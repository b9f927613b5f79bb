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

from ipalg.main import build_parser, main

EXAMPLE_MODEL = str(Path(ipalg.__file__).parent / "assets" / "example_model.json")
INDICATOR_A = '{"a": "1", "b": "0"}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParser:
    def test_subcommands_discovered(self):
        _, subcommands, aliases = build_parser()
        assert {"check-coherence", "prevision", "upper", "contains", "combine", "marginalize",
                "credal-vertices", "compatible", "solve-marginal", "rip", "sigma", "run",
                "format"} <= set(subcommands)
        assert aliases["lower"] == "prevision"
        assert aliases["fmt"] == "format"

    def test_model_required(self, capsys):
        with pytest.raises(SystemExit):
            main(["prevision", "favours_a_prevision", INDICATOR_A])


class TestQueries:
    def test_prevision(self, capsys):
        code, out, _ = run_cli(capsys, "prevision", "-m", EXAMPLE_MODEL, "favours_a_prevision", INDICATOR_A)
        assert code == 0
        entry = json.loads(out)["entries"][0]
        assert entry["kind"] == "prevision"
        assert entry["result"] == "1/2"

    def test_alias(self, capsys):
        code, out, _ = run_cli(capsys, "lower", "-m", EXAMPLE_MODEL, "sigma:favours_a", INDICATOR_A)
        assert code == 0
        assert json.loads(out)["entries"][0]["result"] == "1/2"

    def test_rip(self, capsys):
        code, out, _ = run_cli(capsys, "rip", "-m", EXAMPLE_MODEL, "X,Y", "Y,Z", "Z,X")
        assert code == 0
        assert json.loads(out)["entries"][0]["result"] == {"answer": "RIP: no", "failing": 1}

    def test_output_is_deterministic(self, capsys):
        first = run_cli(capsys, "solve-marginal", "-m", EXAMPLE_MODEL, "fair_xy", "bounded_yz")[1]
        second = run_cli(capsys, "solve-marginal", "-m", EXAMPLE_MODEL, "fair_xy", "bounded_yz")[1]
        assert first == second

    def test_run_batch(self, capsys):
        code, out, _ = run_cli(capsys, "run", "-m", EXAMPLE_MODEL)
        assert code == 0
        assert len(json.loads(out)["entries"]) == 9

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "check-coherence", "-m", EXAMPLE_MODEL, "-o", str(target), "sure_loss")
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["entries"][0]["result"] == "incoherent (0 in natural extension)"


class TestExitCodes:
    def test_unknown_piece(self, capsys):
        code, out, err = run_cli(capsys, "check-coherence", "-m", EXAMPLE_MODEL, "missing")
        assert code == 2
        assert out == ""
        assert "Unknown piece 'missing'" in err

    def test_malformed_gamble(self, capsys):
        code, _, _ = run_cli(capsys, "prevision", "-m", EXAMPLE_MODEL, "favours_a_prevision", '{"a": "0.5"}')
        assert code == 2

    def test_parse_error(self, capsys, tmp_path):
        model = tmp_path / "broken.json"
        model.write_text('{"variables": {"X": ["a", "b"]}, "pieces": {"p": {"kind": "cone", "label": ["W"]}}}')
        code, _, err = run_cli(capsys, "format", "-m", str(model), "--check")
        assert code == 2
        assert "undeclared variable 'W'" in err

    def test_guard_exceeded(self, capsys):
        code, _, err = run_cli(capsys, "check-coherence", "-m", EXAMPLE_MODEL, "--max-cells", "4", "favours_a")
        assert code == 3
        assert "max_cells" in err

    def test_missing_model(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", "-m", str(tmp_path / "absent.json"))
        assert code == 2
        assert "absent.json" in err


class TestFormat:
    def test_canonical_output(self, capsys):
        code, out, _ = run_cli(capsys, "format", "-m", EXAMPLE_MODEL)
        assert code == 0
        assert json.loads(out)["pieces"]["fair_xy"]["mass"]["a|0"] == "1/4"

    def test_check_prints_nothing(self, capsys):
        code, out, _ = run_cli(capsys, "fmt", "-m", EXAMPLE_MODEL, "--check")
        assert code == 0
        assert out == ""
