import json

import pytest

from genus8.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_bad_field_is_rejected(capsys):
    with pytest.raises(SystemExit) as e:
        main(["build", "--field", "fp:4"])
    assert e.value.code != 0


def test_bad_seed_is_rejected():
    with pytest.raises(SystemExit) as e:
        main(["build", "--seed", "-3"])
    assert e.value.code != 0


def test_build_is_deterministic(capsys):
    a = run(capsys, "build", "--seed", "3", "--field", "fp:7")
    b = run(capsys, "build", "--seed", "3", "--field", "fp:7")
    assert a == b and a[0] == 0
    d = json.loads(a[1])
    assert d["certificate"]["passed"] and d["requested_seed"] == 3


def test_classify_standard(capsys):
    code, out = run(capsys, "classify-pencil", "--standard", "b", "--field", "q")
    assert code == 0 and json.loads(out)["class"]["class"] == "B"
    code, _ = run(capsys, "classify-pencil", "--field", "q")
    assert code == 2


def test_correspond_and_scan(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    assert main(["build", "--seed", "1", "--out", str(pair)]) == 0
    code, out = run(capsys, "scan", "--what", "gammaw", "--pair", str(pair), "--inventory", str(tmp_path / "g.json"))
    assert code == 0 and json.loads(out)["count"] == 18
    code, out = run(capsys, "scan", "--what", "y", "--pair", str(pair), "--p", "7")
    assert code == 2


def test_verify_scan_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "scan", "--seed", "1")
    assert code == 0 and json.loads(out)["passed"]


def test_pipeline_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["pipeline", "--seed", "1", "--out", str(a)]) == 0
    assert main(["pipeline", "--seed", "1", "--workers", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert len(rep["a_lines"]) == 3
