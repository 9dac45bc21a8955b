import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from tamedims import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def schema(command):
    text = resources.files("tamedims").joinpath("schemas", f"{command}.schema.json").read_text()
    return json.loads(text)


def run_json(capsys, command, *argv):
    code, out = run(capsys, command, *argv, "--json")
    doc = json.loads(out.out)
    jsonschema.validate(doc, schema(command))
    assert doc["command"] == command and doc["schema_version"] == "1.0"
    return code, doc


def test_tame_dims_p5(capsys):
    code, doc = run_json(capsys, "tame-dims", "--p", "5", "--max-dim", "10")
    assert code == 0
    dims = {row["d"]: row["witnesses"] for row in doc["result"]["dims"]}
    assert dims == {1: [1, 2], 2: [3, 6], 6: [7, 9, 14, 18]}


def test_tame_dims_text(capsys):
    code, out = run(capsys, "tame-dims", "--p", "7", "--max-dim", "2")
    assert code == 0
    assert "d =    1" in out.out


def test_check_av(capsys):
    code, doc = run_json(capsys, "check-av", "--p", "5", "--d", "7")
    assert code == 0
    assert doc["result"]["conclusion"] == "ReducibleForced"
    code, doc = run_json(capsys, "check-av", "--p", "5", "--d", "11")
    assert doc["result"]["conclusion"] == "NotDecidedByPaper"
    assert doc["result"]["reasons"][0]["code"] == "sophie_germain"


def test_build_rep_verify(capsys, tmp_path):
    out_file = tmp_path / "rep.json"
    code, doc = run_json(capsys, "build-rep", "--m", "7", "--q", "3", "--verify", "--out", str(out_file))
    assert code == 0
    assert doc["result"]["irreducible"] is True
    assert doc["result"]["dim"] == 6
    model = json.loads(out_file.read_text())
    assert model["m"] == 7 and model["q"] == 3


def test_build_rep_text_reports_reducible(capsys):
    code, out = run(capsys, "build-rep", "--m", "7", "--q", "2", "--verify")
    assert code == 0
    assert "irreducible=false" in out.out
    assert "commutant_dim=2" in out.out


def test_build_rep_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "check_suite", lambda rep: {"frobenius_relation": {"passed": False}, "commutant": {"passed": None}})
    code, _ = run(capsys, "build-rep", "--m", "7", "--q", "3", "--verify")
    assert code == 1


def test_inverse_totient(capsys):
    code, doc = run_json(capsys, "inverse-totient", "--d", "4")
    assert doc["result"] == {"values": [5, 8, 10, 12], "non_totient": False}
    code, doc = run_json(capsys, "inverse-totient", "--d", "14")
    assert doc["result"] == {"values": [], "non_totient": True}


def test_sg_json_and_csv(capsys):
    code, doc = run_json(capsys, "sg", "--x", "1000", "--prime-bound", "10000")
    assert code == 0 and doc["result"]["actual"] == 37
    code, out = run(capsys, "sg", "--x", "1000", "--prime-bound", "10000", "--csv")
    lines = out.out.strip().splitlines()
    assert len(lines) == 2 and lines[0].startswith("x,")


@pytest.mark.parametrize(
    "argv, message",
    [
        (["tame-dims", "--p", "6"], "p must be prime"),
        (["check-av", "--p", "5", "--d", "0"], "--d must be >= 1"),
        (["build-rep", "--m", "10", "--q", "5"], "coprime"),
        (["build-rep", "--m", "7", "--q", "1"], "--q must be >= 2"),
        (["inverse-totient", "--d", "0"], "--d must be"),
        (["sg", "--x", "2"], "--x must be >= 3"),
        (["sg", "--x", "100", "--json", "--csv"], "not allowed"),
        (["nope"], "invalid choice"),
    ],
)
def test_usage_errors_exit_2(capsys, argv, message):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2
    assert message in capsys.readouterr().err


def test_json_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "tamedims", "build-rep", "--m", "9", "--q", "2", "--verify", "--json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["result"]["irreducible"] is True
