"""The kra command line: exit codes, text output, JSON envelopes, schema."""

from __future__ import annotations

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import jsonschema
import pytest

import kra
from kra import parse, serialize, structural_key
from kra.cli import main

from conftest import FIXTURE_DIR

SCHEMA = json.loads(
    (Path(kra.__file__).parent / "schema" / "report.schema.json").read_text()
)

SM = str(FIXTURE_DIR / "sm.kra")
CHAIN = str(FIXTURE_DIR / "chain.kra")


def run(*argv: str):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv: str) -> dict:
    code, out, err = run(*argv, "--json")
    assert err == ""
    envelope = json.loads(out)
    jsonschema.validate(envelope, SCHEMA)
    return code, envelope


class TestExitCodes:
    def test_success_paths_return_zero(self):
        for argv in (
            ["validate", "--builtin", "sm"],
            ["validate", SM],
            ["check-rconnect", "--builtin", "chain"],  # negative but not strict
            ["coverage", "--builtin", "chain"],
            ["verdict", "--builtin", "chain"],
            ["powercount"],
            ["builtins"],
            ["fmt", "--builtin", "ym:2"],
        ):
            code, _out, err = run(*argv)
            assert code == 0, (argv, err)

    def test_missing_file_is_a_read_error(self):
        code, _out, err = run("validate", "/no/such/file.kra")
        assert code == 2
        assert err.startswith("kra: cannot read /no/such/file.kra")

    def test_parse_error_carries_position(self, tmp_path):
        bad = tmp_path / "bad.kra"
        bad.write_text("factor c2 C 2\nbogus line\n")
        code, _out, err = run("validate", str(bad))
        assert code == 2
        assert err.startswith(f"{bad}:2:1:")

    def test_validation_failure_returns_three(self, tmp_path):
        broken = tmp_path / "broken.kra"
        # two vertices of the same sign joined by an edge: grading fails
        broken.write_text(
            "factor c1 C 1\nfactor c2 C 2\n"
            "vertex a c1 c1 +\nvertex b c2 c1 +\n"
            "vertex ja c1 c1 +\nvertex jb c1 c2 +\n"
            "edge e a -> b\nedge je ja -> jb label e\n"
            "jmap a <-> ja\njmap b <-> jb\n"
        )
        code, out, err = run("validate", str(broken))
        assert code == 3
        assert "overall: FAIL" in out
        assert "[FAIL] grading" in out

    def test_downstream_commands_refuse_invalid_diagrams(self, tmp_path):
        broken = tmp_path / "broken.kra"
        broken.write_text(
            "factor c2 C 2\nvertex a c2 c2 +\nvertex b c2 c2 +\n"
            "edge e a -> b\n"
        )
        for cmd in ("gauge-algebra", "fields", "coverage", "verdict"):
            code, _out, err = run(cmd, str(broken))
            assert code == 3, cmd
            assert err.startswith("validation failed"), (cmd, err)

    def test_strict_mode_escalates_negative_verdicts(self):
        assert run("check-rconnect", "--builtin", "chain", "--strict")[0] == 4
        assert run("coverage", "--builtin", "chain", "--strict")[0] == 4
        assert run("verdict", "--builtin", "chain", "--strict")[0] == 4
        # positives stay at zero
        assert run("check-rconnect", "--builtin", "sm", "--strict")[0] == 0
        assert run("coverage", "--builtin", "sm", "--strict")[0] == 0
        assert run("verdict", "--builtin", "sm", "--strict")[0] == 0

    def test_usage_errors_return_sixty_four(self):
        cases = (
            [],
            ["validate"],
            ["validate", "--builtin", "sm", SM],
            ["validate", "--builtin", "sm", "--file", SM],
            ["validate", "--builtin", "nope"],
            ["validate", "--builtin", "ym:0"],
            ["validate", "--builtin", "sm:3"],
            ["powercount", "-n", "5"],
            ["powercount", "-n", "2"],
            ["verdict", "--builtin", "sm", "-n", "7"],
            ["powercount", "--profile", "{not json}"],
            ["powercount", "--profile", '{"L": 1, "bogus": 2}'],
            ["powercount", "--profile", '{"I_A": 2}'],
            ["powercount", "--profile", '{"L": 0, "V": {"x": 1}}'],
            ["check-rconnect", "--builtin", "sm", "--dim", "-1"],
            ["no-such-command"],
        )
        for argv in cases:
            code, _out, _err = run(*argv)
            assert code == 64, argv

    def test_version_and_help(self):
        code, out, _ = run("--version")
        assert code == 0 and out.strip() == f"kra {kra.__version__}"
        assert run("--help")[0] == 0
        assert run("validate", "--help")[0] == 0


class TestJsonEnvelopes:
    COMMANDS = (
        ["validate", "--builtin", "sm"],
        ["validate", "--builtin", "chain"],
        ["gauge-algebra", "--builtin", "sm"],
        ["fields", "--builtin", "sm"],
        ["action-terms", "--builtin", "sm"],
        ["counterterms", "--builtin", "chain"],
        ["coverage", "--builtin", "chain"],
        ["check-rconnect", "--builtin", "sm"],
        ["check-rconnect", "--builtin", "chain", "--dim", "6"],
        ["check-rconnect", "--builtin", "chain", "--strict-bounds"],
        ["powercount"],
        ["powercount", "-n", "8"],
        [
            "powercount",
            "--profile",
            '{"L": 1, "I_A": 2, "V": {"3,0": 2}, "E_A": 2}',
        ],
        ["verdict", "--builtin", "sm", "-n", "8"],
        ["builtins"],
        ["fmt", "--builtin", "chain"],
    )

    def test_every_command_validates_against_the_schema(self):
        for argv in self.COMMANDS:
            _code, envelope = run_json(*argv)
            assert envelope["command"] == argv[0]
            assert envelope["version"] == kra.__version__
            assert isinstance(envelope["warnings"], list)

    def test_envelope_is_deterministic(self):
        a = run("verdict", "--builtin", "sm", "--json")
        b = run("verdict", "--builtin", "sm", "--json")
        assert a == b

    def test_input_block_names_the_source(self):
        _code, env = run_json("validate", "--builtin", "ym:3")
        assert env["input"] == {"kind": "builtin", "name": "ym:3"}
        _code, env = run_json("validate", SM)
        assert env["input"] == {"kind": "file", "path": SM}

    def test_rconnect_json_matches_text_verdict(self):
        _code, env = run_json("check-rconnect", "--builtin", "chain")
        _code2, text, _err = run("check-rconnect", "--builtin", "chain")
        assert env["result"]["verdict"] is False
        assert "R-connected in dimension 4: false" in text
        missing = [
            e for e in env["result"]["cond2"] if e["status"] == "missing"
        ]
        assert len(missing) == 1
        assert missing[0]["pair"][0]["display"] == "(1 2)(2 1)"
        assert missing[0]["pair"][1]["display"] == "(1~ 3)(3 1~)"
        assert "[MISSING] (1 2)(2 1) + (1~ 3)(3 1~)" in text

    def test_witnesses_appear_in_both_forms(self):
        _code, env = run_json("check-rconnect", "--builtin", "sm")
        _code2, text, _err = run("check-rconnect", "--builtin", "sm")
        for entry in env["result"]["cond1"]:
            assert entry["witness"] is not None
            assert entry["witness"]["display"] in text

    def test_validate_json_result(self):
        _code, env = run_json("validate", "--builtin", "sm")
        result = env["result"]
        assert result["ok"] is True
        assert result["hilbert_dimension"] == 96
        assert {c["check"] for c in result["checks"]} >= {
            "structure",
            "first-order",
            "grading",
        }

    def test_gauge_algebra_json_result(self):
        _code, env = run_json("gauge-algebra", "--builtin", "sm")
        result = env["result"]
        assert result["decomposition"] == "sp(1) + su(3) + u(1)"
        assert result["abelian_rank"] == 1
        assert result["simple_factors"] == [
            {"name": "sp(1)", "dimension": 3},
            {"name": "su(3)", "dimension": 8},
        ]
        assert result["fundamental_multiplicities"] == [36, 12, 12]
        assert result["total_dimension"] == 12

    def test_fields_json_result(self):
        _code, env = run_json("fields", "--builtin", "sm")
        assert env["result"]["total_components"] == 8
        assert len(env["result"]["multiplets"]) == 4

    def test_coverage_json_result(self):
        _code, env = run_json("coverage", "--builtin", "chain")
        result = env["result"]
        assert result["complete"] is False
        missing = [e for e in result["entries"] if e["matched"] is None]
        assert len(missing) == 1
        assert (
            missing[0]["required"]["structure"]
            == "tr[phi{1,2}* phi{1,2}] tr[phi{1~,3}* phi{1~,3}]"
        )

    def test_powercount_profile_json(self):
        _code, env = run_json(
            "powercount",
            "--profile",
            '{"L": 1, "I_A": 2, "V": {"3,0": 2}, "E_A": 2}',
        )
        profile = env["result"]["profile"]
        assert profile["consistent"] is True
        assert profile["omega_bound"] == 2
        _code, env = run_json("powercount")
        assert env["result"]["profile"] is None
        assert env["result"]["order"] == 4

    def test_inconsistent_profile_with_strict_fails(self):
        argv = [
            "powercount",
            "--profile",
            '{"L": 3, "I_A": 2, "V": {"3,0": 2}, "E_A": 2}',
        ]
        code, env = run_json(*argv)
        assert code == 0
        assert env["result"]["profile"]["consistent"] is False
        assert env["result"]["profile"]["omega_bound"] is None
        code, _out, _err = run(*argv, "--strict")
        assert code == 4

    def test_verdict_json_result(self):
        _code, env = run_json("verdict", "--builtin", "chain")
        result = env["result"]
        assert result["verdict"] == "Inconclusive"
        assert result["failing_hypotheses"] == ["R-connectedness fails"]


class TestWarnings:
    def test_ko_subtlety_warning_reaches_the_envelope(self, tmp_path):
        doc = tmp_path / "odd.kra"
        doc.write_text(
            "factor c2 C 2\nkodim 3\nvertex v c2 c2\n"
            "edge e v -> v\njmap v <-> v\n"
        )
        _code, env = run_json("validate", str(doc))
        assert env["warnings"]
        _code2, text, _err = run("validate", str(doc))
        assert "warning:" in text


class TestFmt:
    def test_fmt_output_is_canonical_and_parses_back(self):
        code, out, _err = run("fmt", "--builtin", "chain")
        assert code == 0
        d = parse(out)
        assert structural_key(d) == structural_key(kra.builtin("chain"))
        assert out == serialize(d)

    def test_fmt_file_is_idempotent(self, tmp_path):
        messy = tmp_path / "messy.kra"
        messy.write_text(
            "# comment\nfactor b C 2\nfactor a C 1\n\n"
            "vertex w b a +\nvertex v a b +\n"
            "edge e v -> w\njmap v <-> w\n"
        )
        _code, once, _ = run("fmt", str(messy))
        (tmp_path / "once.kra").write_text(once)
        _code, twice, _ = run("fmt", str(tmp_path / "once.kra"))
        assert once == twice

    def test_fmt_json_wraps_the_text(self):
        _code, env = run_json("fmt", "--builtin", "ym:2")
        assert env["result"]["text"] == serialize(kra.builtin("ym", 2))


class TestBuiltinsListing:
    def test_lists_every_builtin_with_summary(self):
        code, out, _err = run("builtins")
        assert code == 0
        for name in ("sm", "chain", "ym"):
            assert any(line.startswith(f"{name}:") for line in out.splitlines())

    def test_json_form(self):
        _code, env = run_json("builtins")
        names = [row["name"] for row in env["result"]["builtins"]]
        assert names == sorted(names)
        assert {"sm", "chain", "ym"} <= set(names)
