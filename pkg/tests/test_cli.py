import json

import pytest
from click.testing import CliRunner

from app.cmd.cmd import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_fw(runner):
    result = runner.invoke(cli, ["fw", "(ab)^2"])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "3"


def test_mfw_pair_identity(runner):
    result = runner.invoke(cli, ["mfw", "--pair-identity", "k=2", "t=2"])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "3"


def test_bad_pair_identity(runner):
    result = runner.invoke(cli, ["fw", "--pair-identity", "k=2", "x=2"])
    assert result.exit_code == 2


def test_contains_ordered(runner):
    result = runner.invoke(cli, ["contains", "--mode", "ordered", "12323", "121"])
    assert result.exit_code == 0
    assert result.output.strip() == "true"


def test_json_envelope(runner):
    result = runner.invoke(cli, ["--json", "fw", "--certificate", "(ab)^2"])
    assert result.exit_code == 0
    body = json.loads(result.stdout)
    assert body["command"] == "fw"
    assert body["value"] == 3
    assert body["inputs"]["family"] == ["1 2 1 2"]
    assert body["certificates"]["avoider"] == "AD"
    assert len(body["certificates"]["embeddings"]) == 8
    assert "elapsed_ms" in body


def test_json_omits_certificates_unless_asked(runner):
    body = json.loads(runner.invoke(cli, ["--json", "red", "1 1 2 2 1"]).stdout)
    assert body["value"] == "1 2 1"
    assert "certificates" not in body


def test_parse_error_exits_2_with_caret(runner):
    result = runner.invoke(cli, ["fw", "1 2 #"])
    assert result.exit_code == 2
    assert "^" in result.output


def test_guard_exits_1(runner):
    result = runner.invoke(cli, ["extremal", "--n", "7", "--formation", "2", "2"])
    assert result.exit_code == 1
    assert "guard" in result.output


def test_formation_commands(runner):
    assert runner.invoke(cli, ["formation", "3", "2", "--binary", "AD"]).output.strip() == "1 2 3 3 2 1"
    assert runner.invoke(cli, ["formation", "2", "2"]).output.strip() == "4"
    assert runner.invoke(cli, ["formation", "2", "1", "--binary", "D", "--matrix"]).output.split() == ["01", "10"]


def test_chi_round_trip(runner):
    assert runner.invoke(cli, ["chi", "1 2 1"]).output.split() == ["101", "010"]
    assert runner.invoke(cli, ["chi-inv", "101;010"]).output.strip() == "1 2 1"


def test_extremal_matrix(runner):
    result = runner.invoke(cli, ["--json", "extremal", "--n", "3", "--mode", "matrix", "--family", "10;01"])
    body = json.loads(result.stdout)
    assert body["value"] == 5
    assert len(body["certificates"]["witness"]) == 3


def test_verify_single_check(runner):
    result = runner.invoke(cli, ["verify", "--check", "fw-pair", "--k", "2", "--t", "2"])
    assert result.exit_code == 0, result.output
    assert "PASS fw-pair" in result.output
    assert "1 passed, 0 failed" in result.output


def test_verify_needs_a_check(runner):
    assert runner.invoke(cli, ["verify"]).exit_code == 2


def test_mfw_reads_matrix_file(runner, tmp_path):
    path = tmp_path / "pair.txt"
    path.write_text("1010\n0101\n\n0101\n1010\n")
    result = runner.invoke(cli, ["mfw", "--file", str(path)])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "3"


@pytest.mark.parametrize("args", [
    ["fw"],
    ["mfw"],
    ["fw", "--pair-identity", "k=0", "t=2"],
    ["extremal", "--n", "2", "--mode", "ordered"],
    ["mfw", "11;11"],
])
def test_invalid_arguments_exit_2(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2, result.output


def test_invalid_arguments_json_report(runner):
    result = runner.invoke(cli, ["--json", "fw"])
    assert result.exit_code == 2
    report = json.loads(result.stdout.splitlines()[0])
    assert report["error"] == "InvalidPatternError"
    assert "position" not in report


def _without_timings(value):
    if isinstance(value, dict):
        return {k: _without_timings(v) for k, v in value.items() if k != "elapsed_ms"}
    if isinstance(value, list):
        return [_without_timings(v) for v in value]
    return value


@pytest.mark.slow
def test_verify_all_does_not_depend_on_workers(runner):
    bodies = []
    for workers in ("1", "8"):
        result = runner.invoke(cli, ["--json", "--parallel", workers, "verify", "--all"])
        assert result.exit_code == 0, result.output
        bodies.append(_without_timings(json.loads(result.stdout)))
    assert bodies[0] == bodies[1]
    assert bodies[0]["value"]["overall"]


def test_formation_matrix_count_and_enumeration(runner):
    assert runner.invoke(cli, ["formation", "2", "2", "--fat", "2", "--matrix"]).output.strip() == "4"
    assert runner.invoke(cli, ["formation", "2", "2", "--fat", "2"]).output.strip() == "36"
    listed = runner.invoke(cli, ["formation", "2", "1", "--matrix", "--enumerate"]).output.split()
    assert listed == ["10;01", "01;10"]
    fat = runner.invoke(cli, ["formation", "2", "1", "--fat", "2", "--matrix", "--enumerate"]).output.split()
    assert fat == ["1100;0011", "0011;1100"]
