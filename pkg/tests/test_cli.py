import json
import subprocess
import sys

import pytest

from exholo import cli


def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "exholo.cli", *args], capture_output=True, text=True, cwd=cwd)


def test_build_g2(tmp_path):
    out = tmp_path / "g2.json"
    p = run("build", "3.1", "--json", str(out))
    assert p.returncode == 0
    assert "g2" in p.stdout
    d = json.loads(out.read_text())
    assert d["label"] == "g2"
    assert d["algebra"]["dim"] == 14


def test_build_so8():
    p = run("build", "1.1.1.1")
    assert p.returncode == 0
    assert "dim 28" in p.stdout and "so(8)" in p.stdout


def test_build_odd_sum_is_usage_error():
    p = run("build", "2.1")
    assert p.returncode == 2
    assert "even" in p.stderr


def test_build_even_sum_without_model():
    p = run("build", "5.1")
    assert p.returncode == 1


def test_verify_bogus():
    p = run("verify", "bogus")
    assert p.returncode == 2
    assert "usage" in p.stderr


def test_verify_thm17(tmp_path):
    out = tmp_path / "r.json"
    md = tmp_path / "r.md"
    p = run("verify", "thm-1-7", "--json", str(out), "--md", str(md))
    assert p.returncode == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "pass"
    assert all(set(c) >= {"name", "status", "expected", "actual"} for c in rep["checks"])
    assert "sha256" in md.read_text()


def test_verify_stdout_default():
    p = run("verify", "lemma-1-3")
    assert p.returncode == 0
    assert json.loads(p.stdout)["suite"] == "lemma-1-3"


def test_classify_small(tmp_path):
    out = tmp_path / "c.json"
    p = run("classify", "--max-p-dim", "9", "--max-k", "2", "--max-n", "4", "--json", str(out))
    assert p.returncode == 0
    got = [tuple(e["multi_index"]) for e in json.loads(out.read_text())]
    assert got == [(2,), (1, 1), (4,), (3, 1), (2, 2)]


def test_classify_bad_bounds():
    assert run("classify", "--max-p-dim", "0").returncode == 2


def test_export_cross(tmp_path):
    out = tmp_path / "x.json"
    p = run("export-cross", "--json", str(out))
    assert p.returncode == 0
    d = json.loads(out.read_text())
    assert d["dim"] == 7 and d["entries"]


def test_run_suite_in_process_unknown():
    with pytest.raises(ValueError):
        cli.run_suite("nope")


def test_report_canonical_excludes_elapsed():
    a = cli.run_suite("rem-1-4")
    b = cli.run_suite("rem-1-4")
    a.elapsed_ms, b.elapsed_ms = 1, 2
    assert a.dumps() == b.dumps()
    assert "elapsed" not in a.dumps()
