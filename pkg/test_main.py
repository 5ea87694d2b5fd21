"""Tests for the command line, configuration loading and DOT export."""
import json
from pathlib import Path

import pytest

from catalog import G3_FUSION, build
from main import EXIT_ASSERTION, EXIT_ERROR, EXIT_OK, ToolkitConfig, load_config_from_file, render_dot, run

LATTICES = Path(__file__).parent / "lattices"
M5_FILE = str(LATTICES / "m5.json")


def _json(capsys):
    return json.loads(capsys.readouterr().out)


class TestCommands:
    def test_classify(self, capsys):
        assert run(["classify", "--catalog", "MO(3)"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "MO(3): quantum logic"

    def test_classify_json(self, capsys):
        assert run(["classify", "--catalog", "BN4", "--json"]) == EXIT_OK
        document = _json(capsys)
        assert document["name"] == "BN4"
        assert document["label"] == "paraconsistent logic"

    def test_check_assert_fails_with_witness(self, capsys):
        code = run(["check", "--file", M5_FILE, "--property", "conjunctive-de-morgan", "--assert", "--json"])
        assert code == EXIT_ASSERTION
        verdict = _json(capsys)["verdicts"][0]
        assert verdict == {"property": "conjunctive-de-morgan", "holds": False, "witness": ["a", "b"]}

    def test_check_without_assert(self, capsys):
        assert run(["check", "--file", M5_FILE, "--property", "conjunctive-de-morgan"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("m5:")
        assert "fails at (a, b)" in out

    def test_check_sublattice_verdicts(self, capsys):
        args = ["check", "--catalog", "N5", "--property", "n5-free", "--property", "m5-free", "--json"]
        assert run(args) == EXIT_OK
        verdicts = {v["property"]: v for v in _json(capsys)["verdicts"]}
        assert not verdicts["n5-free"]["holds"]
        assert sorted(verdicts["n5-free"]["witness"]) == ["0", "1", "a", "b", "c"]
        assert verdicts["m5-free"]["holds"]

    def test_unknown_property(self, capsys):
        assert run(["check", "--catalog", "M5", "--property", "sparkle"]) == EXIT_ERROR
        assert "unknown properties" in capsys.readouterr().err

    def test_unknown_catalog_entry(self, capsys):
        assert run(["classify", "--catalog", "K4", "--json"]) == EXIT_ERROR
        error = json.loads(capsys.readouterr().err)
        assert error["error"] == "UnknownName"

    def test_missing_file(self, tmp_path, capsys):
        assert run(["classify", "--file", str(tmp_path / "absent.json")]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error:")

    def test_lattice_without_negation(self, capsys):
        assert run(["classify", "--catalog", "N5"]) == EXIT_ERROR
        assert "carries no negation" in capsys.readouterr().err

    def test_budget_override(self, capsys):
        assert run(["check", "--catalog", "M5", "--budget", "1"]) == EXIT_ERROR
        assert "budget" in capsys.readouterr().err

    def test_budget_only_applies_to_requested_searches(self, capsys):
        args = ["check", "--catalog", "M5", "--property", "conjunctive-de-morgan", "--budget", "1", "--json"]
        assert run(args) == EXIT_OK
        assert _json(capsys)["verdicts"][0]["property"] == "conjunctive-de-morgan"
        assert run(["check", "--catalog", "M5", "--property", "m5-free", "--budget", "1"]) == EXIT_ERROR

    def test_check_implicative_property(self, capsys):
        args = ["check", "--catalog", "CUBE(2)", "--property", "implicative", "--property", "contraction", "--json"]
        assert run(args) == EXIT_OK
        assert all(v["holds"] for v in _json(capsys)["verdicts"])

    def test_unknown_property_lists_sublattice_names(self, capsys):
        assert run(["check", "--catalog", "M5", "--property", "sparkle", "--property", "modular"]) == EXIT_ERROR
        assert "o6-free" in capsys.readouterr().err

    def test_residuum(self, capsys):
        assert run(["residuum", "--catalog", "CUBE(2)", "--json"]) == EXIT_OK
        document = _json(capsys)
        assert document["implicative"]
        assert all(v["holds"] for v in document["boolean"])

    def test_residuum_assert_on_m5(self, capsys):
        assert run(["residuum", "--catalog", "M5", "--assert"]) == EXIT_ASSERTION
        assert "not implicative" in capsys.readouterr().out

    def test_tnorm(self, capsys):
        assert run(["tnorm", "--kind", "goedel", "--n", "2", "--json"]) == EXIT_OK
        document = _json(capsys)
        assert document["fusion"] == G3_FUSION
        assert document["negation"] == ["1", "0", "0"]
        assert document["oracle_disagreements"] == []

    def test_tnorm_bad_kind(self, capsys):
        assert run(["tnorm", "--kind", "hamacher"]) == EXIT_ERROR

    def test_eval(self, capsys):
        assert run(["eval", "x & ~x", "--catalog", "BN4", "--env", "x=b"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "b"

    def test_eval_identity(self, capsys):
        args = ["eval", "~(x & y)", "--equals", "~x | ~y", "--catalog", "M5", "--assert", "--json"]
        assert run(args) == EXIT_ASSERTION
        document = _json(capsys)
        assert not document["holds"]
        assert document["witness"]["elements"] == ["a", "b"]

    def test_eval_bad_env(self, capsys):
        assert run(["eval", "x", "--catalog", "M5", "--env", "x"]) == EXIT_ERROR

    def test_decompose(self, capsys):
        assert run(["decompose", "--catalog", "CUBE(2)", "01", "11"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "01 = 00 | 01, 11 = 01 | 10"

    def test_decompose_incompatible(self, capsys):
        assert run(["decompose", "--catalog", "MO(2)", "p1+", "p2+", "--assert"]) == EXIT_ASSERTION

    def test_macneille(self, capsys):
        assert run(["macneille", "--catalog", "P6", "--json"]) == EXIT_OK
        document = _json(capsys)
        assert document["elements"] == ["0", "a", "b", "sup{a,b}", "a'", "b'", "1"]

    def test_macneille_from_file(self, capsys):
        assert run(["macneille", "--file", str(LATTICES / "effects-abcd.json"), "--json"]) == EXIT_OK
        assert "sup{C,D}" in _json(capsys)["elements"]

    def test_catalog_list(self, capsys):
        assert run(["catalog", "list", "--json"]) == EXIT_OK
        assert "TEMPERATURE" in _json(capsys)["entries"]

    def test_catalog_export(self, capsys):
        assert run(["catalog", "export", "M5"]) == EXIT_OK
        document = _json(capsys)
        assert document["negation"] == ["1", "c", "0", "a", "0"]

    def test_catalog_show_needs_name(self, capsys):
        assert run(["catalog", "show"]) == EXIT_ERROR

    def test_render_dot(self, capsys):
        assert run(["render", "--catalog", "O6", "--dot"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("digraph lattice")
        assert out.count(" -> ") == 6

    def test_render_dot_json(self, capsys):
        assert run(["render", "--catalog", "O6", "--dot", "--json"]) == EXIT_OK
        document = _json(capsys)
        assert document["name"] == "O6"
        assert document["dot"].startswith("digraph lattice")
        assert document["dot"].count(" -> ") == 6

    @pytest.mark.parametrize("argv", [[], ["frobnicate"], ["classify", "--catalog", "M5", "--file", M5_FILE]])
    def test_usage_errors(self, argv, capsys):
        assert run(argv) == EXIT_ERROR


# =============================================================================
# DOT export
# =============================================================================

class TestRenderDot:
    @pytest.mark.parametrize("name, nodes, edges", [("CUBE(2)", 4, 4), ("M5", 5, 6), ("MO(3)", 8, 12)])
    def test_counts(self, name, nodes, edges):
        source = render_dot(build(name).lattice)
        assert source.count("[label=") == nodes
        assert source.count(" -> ") == edges
        assert "rankdir=BT" in source

    def test_negation_in_labels(self):
        entry = build("M5")
        source = render_dot(entry.lattice, entry.structure.neg)
        assert "a / c" in source


# =============================================================================
# Configuration
# =============================================================================

class TestConfig:
    def test_defaults_when_missing(self, tmp_path):
        assert load_config_from_file(str(tmp_path / "none.toml")) == ToolkitConfig()

    def test_partial_file(self, tmp_path):
        path = tmp_path / "config.toml"
        path.write_text("[sampling]\nseed = 5\n\n[output]\njson_indent = 0\n")
        config = load_config_from_file(str(path))
        assert config.seed == 5
        assert config.json_indent == 0
        assert config.closure_budget == ToolkitConfig().closure_budget

    def test_shipped_file(self):
        config = load_config_from_file()
        assert config.sublattice_budget == 50_000_000
        assert config.oracle_denominator == 48
        assert config.metaproperty_samples == 200
