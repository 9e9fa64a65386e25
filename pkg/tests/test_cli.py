import json

import pytest

from bimeyniel.cli import main
from bimeyniel import generate_h2, serialize


@pytest.fixture
def h2_file(tmp_path):
    p = tmp_path / "h2.txt"
    p.write_text(serialize(generate_h2()))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, h2_file):
    code, out, _ = run(capsys, "check", h2_file, "--k", "-1")
    assert code == 0
    assert "min non-adjacent degree sum: 8 at (x1,x2)" in out
    assert "strong: yes" in out
    code, out, _ = run(capsys, "check", h2_file)
    assert code == 1 and "condition M_0 (sum >= 9): fails" in out


def test_hamilton_modes(capsys, h2_file):
    code, out, _ = run(capsys, "hamilton", h2_file)
    assert (code, out.strip()) == (1, "none")
    code, out, _ = run(capsys, "hamilton", h2_file, "--mode", "path")
    assert code == 0 and len(out.strip()) == 12
    code, out, _ = run(capsys, "hamilton", h2_file, "--mode", "construct")
    assert code == 1 and "used fallback: yes" in out


def test_classify(capsys, h2_file):
    code, out, _ = run(capsys, "classify", h2_file)
    assert code == 0 and out.startswith("isomorphic to H2")


def test_gen_and_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "gen", "--family", "h1", "--a", "5", "--pattern", "full")
    assert code == 0 and out.startswith("a 5\n")
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out, _ = run(capsys, "classify")
    assert code == 0 and "H1" in out


def test_gen_errors(capsys):
    assert run(capsys, "gen", "--family", "h3", "--a", "5")[0] == 2
    assert run(capsys, "gen", "--family", "h1")[0] == 2
    assert run(capsys, "gen", "--family", "h9")[0] == 2


def test_parse_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("a 2\nx1 x2\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "line 2" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "none.txt"))[0] == 2


def test_verify_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--theorem", "1.3b", "--a", "2", "--out", str(out))
    assert code == 0 and "verdict: CONFIRMED" in text
    assert json.loads(out.read_text())["filtered"] > 0


def test_verify_no_verdict(capsys):
    code, _, _ = run(capsys, "verify", "--theorem", "1.3b", "--a", "3", "--sample", "2000", "--seed", "1", "--budget", "2")
    assert code == 3


def test_sharpness(capsys):
    code, out, _ = run(capsys, "sharpness")
    assert code == 0 and out.count("PASS") == 9


def test_export(capsys, h2_file):
    code, out, _ = run(capsys, "export", h2_file, "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export", h2_file)
    assert out == serialize(generate_h2())
