import json
from importlib import resources

import jsonschema
import pytest

from confex import amat
from confex.cli import main
from confex.matrix import complete_matrix
from confex.patterns import triangular_pattern

SCHEMA = json.loads(resources.files("confex").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, tmp_path, *argv):
    dest = tmp_path / "report.json"
    code = main([*argv, "--json", str(dest)])
    capsys.readouterr()
    report = json.loads(dest.read_text())
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code
    return code, report


@pytest.fixture
def t4(tmp_path):
    path = tmp_path / "t4.amat"
    amat.dump(triangular_pattern(4, 0, 1), path)
    return str(path)


@pytest.fixture
def k3(tmp_path):
    path = tmp_path / "k3.amat"
    amat.dump(complete_matrix(3, 2), path)
    return str(path)


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_gen_pattern(capsys):
    code, out, _ = run(capsys, "gen", "--pattern", "T(3;0,1)")
    assert code == 0
    assert out.splitlines()[1:] == ["1 1 1", "0 1 1", "0 0 1"]


def test_gen_random_seeded(capsys, tmp_path):
    args = ["gen", "--random", "3", "5", "-r", "3", "--simple", "--seed", "7"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    out = tmp_path / "r.amat"
    assert main([*args, "--out", str(out)]) == 0
    M = amat.load(out)
    assert M.shape == (3, 5) and len(set(M.columns)) == 5
    assert run(capsys, "gen", "--random", "2", "10", "--simple")[0] == 2


def test_forb_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "forb", "-m", "3", "-r", "2", "--forbid", "2*L@zero1x1")
    assert code == 0 and out.strip() == "4"
    code, report = run_json(capsys, tmp_path, "forb", "-m", "3", "--forbid", "Tprime(2,2)")
    assert code == 0 and report["status"] == "ok"


def test_forb_incomplete(capsys, tmp_path):
    code, report = run_json(capsys, tmp_path, "forb", "-m", "5", "--forbid", "3*L@zero1x1",
                            "--max-nodes", "5")
    assert code == 4 and report["status"] == "incomplete"


def test_forb_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CONFEX_THREADS", "2")
    code, out, _ = run(capsys, "forb", "-m", "4", "--forbid", "2*L@zero1x1")
    assert code == 0 and out.strip() == "5"
    monkeypatch.setenv("CONFEX_THREADS", "lots")
    assert run(capsys, "forb", "-m", "2", "--forbid", "2*L@zero1x1")[0] == 2


def test_check(capsys, tmp_path, t4):
    code, report = run_json(capsys, tmp_path, "check", "--forbid", "I(2;1,0)", "--matrix", t4)
    assert code == 3 and report["status"] == "not_contained"
    code, report = run_json(capsys, tmp_path, "check", "--forbid", "T(2;0,1)", "--matrix", t4,
                            "--mode", "submatrix")
    assert code == 0 and report["result"]["results"][0]["contained"]


def test_usage_errors(capsys, t4):
    assert run(capsys, "check", "--forbid", "Q(1)", "--matrix", t4)[0] == 2
    assert run(capsys, "check", "--forbid", "I(2;1,0)", "--matrix", "/nonexistent")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "forb", "-m", "3")[0] == 2
    assert run(capsys, "construct", "--kind", "single-pair", "--m", "2", "--t", "4")[0] == 2


def test_decompose(capsys, tmp_path, k3):
    code, report = run_json(capsys, tmp_path, "decompose", k3, "--tree")
    assert code == 0 and report["result"]["depth"] >= 1
    code, report = run_json(capsys, tmp_path, "decompose", k3)
    assert code == 0 and report["result"]["steps"]


@pytest.mark.parametrize("extra", [[], ["--strategy", "proof"], ["--mode", "row_fixed"],
                                   ["--mode", "submatrix"]])
def test_extract(capsys, tmp_path, k3, extra):
    code, report = run_json(capsys, tmp_path, "extract", k3, *extra)
    assert code == 0 and report["result"]["found"]


def test_extract_absent(capsys, tmp_path, t4):
    code, report = run_json(capsys, tmp_path, "extract", t4, "--ell", "5")
    assert code == 0 and not report["result"]["found"]


def test_classify(capsys, tmp_path):
    code, report = run_json(capsys, tmp_path, "classify", "-r", "2", "--forbid", "I(2;1,0)")
    assert report["result"]["verdict"] == "linear"
    code, out, _ = run(capsys, "classify", "--forbid", "Tfam(2,2)")
    assert out.startswith("CONSTANT")


def test_ramsey(capsys, tmp_path):
    assert run(capsys, "ramsey", "3", "3", "3")[1].strip() == "90"
    assert run(capsys, "ramsey", "--u", "2", "2")[1].strip() == "67267200"
    code, report = run_json(capsys, tmp_path, "ramsey", "--bound-main", "2", "2")
    assert code == 0 and report["result"]["depth_bound"] == 2
    assert run(capsys, "ramsey")[0] == 2


def test_construct_roundtrip(capsys, tmp_path):
    out = tmp_path / "c.amat"
    code, report = run_json(capsys, tmp_path, "construct", "--kind", "identity-lb", "--m", "3",
                            "--t", "3", "--augment", "--out", str(out))
    M = amat.load(out)
    assert code == 0 and M.shape == (4, 12) and report["result"]["matrix"] == M.to_rows()
    code, _, _ = run(capsys, "check", "--forbid", "3*I(3;0,1)", "--matrix", str(out))
    assert code == 3


def test_collapse(capsys, tmp_path):
    src = tmp_path / "a.amat"
    amat.dump(complete_matrix(2, 3), src)
    code, report = run_json(capsys, tmp_path, "collapse", str(src), "--partition", "0|1,2")
    assert code == 0 and report["result"]["alphabet"] == 2
    assert run(capsys, "collapse", str(src), "--partition", "0|0")[0] == 2


def test_json_stdout(capsys):
    assert main(["ramsey", "2", "2", "--json", "-"]) == 0
    text = capsys.readouterr().out
    report = json.loads(text[text.index("{"):])
    jsonschema.validate(report, SCHEMA)
