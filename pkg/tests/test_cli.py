from __future__ import annotations

import io
import json

import jsonschema
import pytest

from jacsyz.cli import main
from jacsyz.fixtures import CORPUS, fixture_path
from jacsyz.report import analyze, dumps, load_schema

from conftest import problem


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_hilbert_cayley():
    code, text = run("hilbert", str(fixture_path("cayley_a")))
    assert code == 0
    assert text.splitlines()[0].startswith("1 4 6 4 4 4 ")
    assert "tau(V) = 4" in text


def test_local_quintic():
    code, text = run("local", str(fixture_path("quintic_nonwh")), "--point", "1")
    assert code == 0
    assert text.strip() == "mu=11 tau=10 WH=no"


def test_split_bad_chart(capsys):
    code, _ = run("split", str(fixture_path("cayley_a")), "--degree", "2", "--chart", "x")
    assert code == 1
    err = capsys.readouterr().err
    assert "transversality check failed" in err and "x=0 is not transversal" in err


def test_split_good_chart():
    code, text = run("split", str(fixture_path("cayley_b")), "--degree", "2", "--chart", "x")
    assert code == 0
    assert "dim AR = 9, dim KR = 6, dim ER = 3" in text
    assert sum(line.startswith("ER: ") for line in text.splitlines()) == 3


def test_syzygies_listing():
    code, text = run("syzygies", str(fixture_path("cayley_a")), "--degree", "2")
    assert code == 0
    assert text.splitlines()[0] == "dim AR = 9, dim KR = 6, dim ER = 3"
    assert len(text.splitlines()) == 10


def test_audit_exit_codes():
    assert run("audit", str(fixture_path("line_arrangement")))[0] == 0
    assert run("audit", str(fixture_path("quintic_nonwh")))[0] == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: x y\nf: x^2 + y\n", encoding="utf-8")
    assert run("analyze", str(bad))[0] == 1
    assert "not homogeneous" in capsys.readouterr().err
    assert run("analyze", str(tmp_path / "missing.txt"))[0] == 1
    incomplete = tmp_path / "incomplete.txt"
    incomplete.write_text("vars: x y z w\nf: x*y*z+x*y*w+x*z*w+y*z*w\npoints:\n[1,0,0,0]\n", encoding="utf-8")
    assert run("analyze", str(incomplete))[0] == 1
    assert "incomplete" in capsys.readouterr().err


def test_analyze_writes_json(tmp_path):
    target = tmp_path / "r.json"
    code, text = run("analyze", str(fixture_path("quintic_nonwh")), "--json", str(target))
    assert code == 0
    report = json.loads(target.read_text(encoding="utf-8"))
    assert report["points"][0]["weighted_homogeneous"] is False
    assert report["split"]["strict_inclusion_degrees"][0] == 6
    assert "strict inclusion" in text


@pytest.mark.parametrize("name", CORPUS)
def test_reports_validate(name):
    report = json.loads(dumps(analyze(problem(name))))
    jsonschema.validate(report, load_schema())
    assert report["certificates"]["consistent"], report["certificates"]["inconsistencies"]


def test_report_contents():
    rep = analyze(problem("cayley_b"), (0, 3))
    row2 = rep["degrees"][2]
    assert (row2["ar"], row2["kr"], row2["er"]) == (9, 6, 3)
    rep = analyze(problem("line_arrangement"), (0, 3))
    assert [r["ar"] for r in rep["degrees"]][:2] == [0, 0]
    assert rep["degrees"][3]["ar"] == 4


def test_env_cap(monkeypatch):
    monkeypatch.setenv("SYZYGY_MAX_DEGREE", "3")
    rep = analyze(problem("cayley_b"), (0, 9))
    assert rep["input"]["m_range"] == [0, 3] and rep["input"]["m_range_clamped"]
