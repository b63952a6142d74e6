import json

import pytest

from flkernels.cli import main, parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_qb(capsys):
    assert run(capsys, "qb", "--N", "4", "--t", "2") == (0, "v^4 + v^2 + 2 + v^-2 + v^-4")
    assert run(capsys, "qb", "--N", "3", "--t", "1", "--lprime", "3", "--p", "2") == (0, "0")
    assert run(capsys, "qb", "--N", "4", "--t", "3", "--lprime", "3", "--p", "0") == (0, "1")
    code, out = run(capsys, "qb", "--N", "3", "--json")
    assert code == 0 and len(json.loads(out)["values"]) == 4


def test_mult(capsys):
    assert run(capsys, "mult", "--ctx", "schur", "--n", "2", "--r", "1", "E12", "E21") == (0, "[diag(1,0)]")
    code, out = run(capsys, "mult", "--n", "2", "--json", "E12", "E21")
    data = json.loads(out)
    assert code == 0 and len(data["terms"]) == 2
    assert {str(t["matrix"]) for t in data["terms"]} == {"[[0, 1], [1, -1]]", "[[1, 0], [0, 0]]"}
    code, out = run(capsys, "mult", "--ctx", "quotient", "--n", "2", "--lprime", "3", "--p", "2", "--json", "E12", "[E21+diag(1,0)]")
    assert code == 0 and json.loads(out)["terms"] == []


def test_mult_coefficients(capsys):
    code, out = run(capsys, "mult", "--n", "2", "v^-1*diag(1,0)", "E12 + -diag(1,0)")
    assert (code, out) == (0, "v^-1*[[[0,1],[0,0]]] + -v^-1*[diag(1,0)]")


def test_parse_matrix():
    assert parse_matrix("2E12", 2) == ((0, 2), (0, 0))
    assert parse_matrix("[E12+E21+diag(0,2)]", 2) == ((0, 1), (1, 2))
    assert parse_matrix("[[1,2],[3,4]]", 2) == ((1, 2), (3, 4))


def test_decompose(capsys):
    code, out = run(capsys, "decompose", "--n", "2", "--json", "[E12+E21]")
    assert code == 0 and json.loads(out)["ordering"]


def test_usage_errors(capsys):
    assert main(["mult", "--n", "2", "E13", "E21"]) == 2
    assert main(["qb", "--N", "4", "--t", "2", "--lprime", "4", "--p", "2"]) == 2
    assert main(["mult", "--ctx", "quotient", "--n", "2", "E12", "E21"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "nosuch"])
    assert e.value.code == 2


def test_verify(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text = run(capsys, "verify", "gauss", "--lprime", "3,4,5", "--p", "2,3", "--h", "1,2", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert set(rep) >= {"suite", "params", "checks", "seed", "runtime_ms"}
    assert all(set(c) >= {"name", "expected", "computed", "pass"} for c in rep["checks"])
    code, text = run(capsys, "verify", "realization", "--n", "2", "--lprime", "3", "--p", "2", "--h", "1", "--json")
    assert code == 0 and json.loads(text)["pass"]
    code, text = run(capsys, "verify", "det", "--max-m", "4")
    assert code == 0 and "proof closed form" in text
