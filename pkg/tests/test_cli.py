"""Command line interface: subcommands, exit codes, determinism."""

import json

import pytest

from nil7.cli import main

HEISENBERG7 = json.dumps(
    {"field": "Q", "dim": 7, "differentials": {"7": "x1^x2"}}
)
DISJOINT = json.dumps(
    {"field": "Q", "dim": 7, "differentials": {"6": "x1^x2 + x3^x4", "7": "x1^x3 + x2^x5"}}
)
UNFLAT = json.dumps(
    {"field": "Q", "dim": 7, "differentials": {"6": "x1^x2", "7": "x5^x6"}}
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_json(capsys):
    code, out, err = run(capsys, "classify", "--json", HEISENBERG7)
    assert code == 0 and not err
    data = json.loads(out)
    assert data["canonical"]["tag"] == "61-rank2"
    assert data["certificate"]["status"] == "base"


def test_classify_file_input(tmp_path, capsys):
    path = tmp_path / "alg.json"
    path.write_text(DISJOINT)
    code, out, err = run(capsys, "classify", "--input", str(path))
    assert code == 0
    assert json.loads(out)["canonical"]["tag"] == "52-disjoint"


def test_classify_field_override(capsys):
    code, out, _ = run(
        capsys, "classify", "--json", HEISENBERG7, "--field", "Fp", "--p", "5"
    )
    assert code == 0
    data = json.loads(out)
    assert data["input"]["field"] == {"field": "Fp", "p": 5}


def test_classify_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--json", HEISENBERG7, "--format", "text")
    assert code == 0
    assert "61-rank2" in out


def test_classify_deterministic_output(capsys):
    _, out1, _ = run(capsys, "classify", "--json", DISJOINT)
    _, out2, _ = run(capsys, "classify", "--json", DISJOINT)
    assert out1 == out2


def test_exit_code_validation_error(capsys):
    code, _, err = run(capsys, "classify", "--json", "{not json")
    assert code == 1 and err
    # both or neither of --input/--json
    code, _, err = run(capsys, "classify")
    assert code == 1 and err


def test_exit_code_state_error(capsys):
    code, _, err = run(capsys, "classify", "--json", UNFLAT)
    assert code == 2
    assert "NotFlat" in err
    abelian = json.dumps({"field": "Q", "dim": 7, "differentials": {}})
    code, _, err = run(capsys, "classify", "--json", abelian)
    assert code == 2
    six = json.dumps({"field": "Q", "dim": 6, "differentials": {"6": "x1^x2"}})
    code, _, err = run(capsys, "classify", "--json", six)
    assert code == 2


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "--json", HEISENBERG7)
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [1, 6, 16, 25, 25, 16, 6, 1]
    assert data["euler"] == 0
    assert data["duality_ok"] is True


def test_iso(capsys):
    a = json.dumps({"field": "Q", "differentials": {"7": "x1^x2"}})
    b = json.dumps({"field": "Q", "differentials": {"6": "2 x3^x5"}})
    code, out, _ = run(capsys, "iso", "--json", a, "--json2", b)
    assert code == 0
    assert json.loads(out)["isomorphic"] is True
    c = json.dumps({"field": "Q", "differentials": {"7": "x1^x2 + x3^x4"}})
    code, out, _ = run(capsys, "iso", "--json", a, "--json2", c)
    assert code == 0
    assert json.loads(out)["isomorphic"] is False


def test_enumerate_deterministic(capsys):
    args = ("enumerate", "--field", "Fp", "--p", "5", "--samples", "50", "--seed", "3")
    code, out1, _ = run(capsys, *args)
    assert code == 0
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    data = json.loads(out1)
    assert data["count"] == 15


def test_enumerate_model_fields(capsys):
    code, out, _ = run(capsys, "enumerate", "--field", "Qbar")
    assert code == 0
    assert json.loads(out)["count"] == 13
    code, out, _ = run(capsys, "enumerate", "--field", "R")
    assert code == 0
    assert json.loads(out)["count"] == 16


def test_table(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    data = json.loads(out)
    assert len(data["rows"]) == 16
    assert data["all_match"] is True


def test_unknown_subcommand(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1
