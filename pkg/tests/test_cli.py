import json
import os

import pytest

from qaffine.cli import EXAMPLE3, SpecError, example3_report, main, parse_spec

GOLDEN = os.path.join(os.path.dirname(__file__), "golden", "example3.json")


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "ex3.json"
    p.write_text(EXAMPLE3)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_example():
    spec = parse_spec(EXAMPLE3)
    assert spec.n == 3 and spec.m == 2
    assert spec.bichar.L[1] == ((0, 0, 1), (0, 0, 0), (-1, 0, 0))
    assert spec.mu == [1, "alpha"]


def test_parse_errors():
    with pytest.raises(SpecError, match="syntax error"):
        parse_spec("")
    with pytest.raises(SpecError, match="mutually exclusive"):
        parse_spec('{"n": 2, "L": [[[0,1],[-1,0]]], "r": [[0,1],[-1,0]]}')
    with pytest.raises(SpecError, match="line 2"):
        parse_spec('{"n": 2,\n "L": [[[0,1],[-1,0]],}')
    with pytest.raises(SpecError, match=r"line 3, field 'L'.*antisymmetric"):
        parse_spec('{\n "n": 2,\n "L": [[[0,1],[1,0]]]\n}')
    with pytest.raises(SpecError, match="field 'mu'"):
        parse_spec('{"n": 2, "L": [[[0,1],[-1,0]]], "mu": [1, 2]}')
    with pytest.raises(SpecError, match="unknown field"):
        parse_spec('{"n": 2, "L": [[[0,1],[-1,0]]], "extra": 1}')
    with pytest.raises(SpecError, match="nonzero"):
        parse_spec('{"n": 2, "r": [[0,0],[0,0]]}')


def test_example3_matches_golden(capsys):
    code, out, _ = run(capsys, "example3")
    assert code == 0
    with open(GOLDEN, encoding="utf-8") as fh:
        assert out == fh.read()
    assert json.loads(out) == example3_report()


def test_analyze(capsys, example_file):
    code, out, _ = run(capsys, "analyze", example_file)
    data = json.loads(out)
    assert code == 0
    assert data["rank_vector"] == [0, 2, 0, 0, 1, 1, 1, 0]
    assert list(data) == ["input", "strata", "rank_vector", "cover_edges", "poisson_matrix"]


def test_limit(capsys, example_file):
    code, out, _ = run(capsys, "limit", example_file, "--max-degree", "1")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert data["poisson_matrix"]["matrix"] == [["0", "2", "2*alpha"], ["-2", "0", "0"], ["-2*alpha", "0", "0"]]


def test_verify_deterministic(capsys, example_file):
    argv = ("verify", example_file, "--max-degree", "3", "--samples", "200", "--seed", "7")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["summary"] == "pass, 200/200"
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_core(capsys, example_file):
    code, out, _ = run(capsys, "core", example_file, "--point", "0,2,3")
    assert code == 0 and json.loads(out)["core"]["is_point"]
    code, _, err = run(capsys, "core", example_file, "--point", "1,2")
    assert code == 2 and "--point" in err


def test_hasse(capsys, example_file, tmp_path):
    dot = tmp_path / "out.dot"
    code, out, _ = run(capsys, "hasse", example_file, "--dot", str(dot))
    assert code == 0 and out == dot.read_text()
    assert out.count("->") == 9


def test_toric(capsys, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"n": 3, "r": [[0, 1, 0], [-1, 0, 2], [0, -2, 0]],
                             "toric": {"d": 2, "degrees": [[1, 0, 1], [0, 1, 1]], "L": [[[0, 1], [-1, 0]]]}}))
    code, out, _ = run(capsys, "toric", "pullback", str(p))
    assert code == 0
    assert json.loads(out)["pullback"] == [[[0, 1, 1], [-1, 0, -1], [-1, 1, 0]]]
    code, out, _ = run(capsys, "toric", "check", str(p), "--max-degree", "3")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_toric_missing_block(capsys, example_file):
    code, _, err = run(capsys, "toric", "check", example_file)
    assert code == 2 and "toric" in err


def test_input_errors_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "L": [[[0,1],[-1,0]]], "r": [[0,1],[-1,0]]}')
    code, out, err = run(capsys, "analyze", str(p))
    assert code == 2 and out == "" and "mutually exclusive" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_uniparameter_input(capsys, tmp_path):
    p = tmp_path / "u.json"
    p.write_text('{"n": 3, "r": [[0, 1, -2], [-1, 0, 3], [2, -3, 0]], "mu": [1]}')
    code, out, _ = run(capsys, "limit", str(p), "--max-degree", "1")
    data = json.loads(out)
    assert code == 0 and data["family"] == "monomial"
    assert data["poisson_matrix"]["matrix"] == [["0", "2", "-4"], ["-2", "0", "6"], ["4", "-6", "0"]]
