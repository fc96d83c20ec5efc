import json
import os
import subprocess
import sys

import jsonschema
import pytest

from hypersym import cli, runner
from hypersym.catalog import build, lookup
from hypersym.report import SCHEMA, SCHEMA_VERSION

FAST = ["--samples", "4", "--filter", "d1st1,ias2,MN"]


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def no_jobs_env(monkeypatch):
    monkeypatch.delenv("HYPERSYM_JOBS", raising=False)


def test_verify_report_valid(capsys):
    code, out, _ = run(["verify"] + FAST, capsys)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["status"] == "pass"
    assert [r["identity"] for r in rep["results"]["identities"]] == ["MN", "d1st1", "ias2"]


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "--seed", "5", "--out", str(a)] + FAST) == 0
    assert cli.main(["verify", "--seed", "5", "--out", str(b)] + FAST) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    cli.main(["verify", "--seed", "6", "--out", str(c)] + FAST)
    assert c.read_bytes() != a.read_bytes()


def test_jobs_do_not_change_results(tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["verify", "--out", str(a)] + FAST)
    monkeypatch.setenv("HYPERSYM_JOBS", "2")
    cli.main(["verify", "--out", str(b)] + FAST)
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert rb["config"]["jobs"] == 2
    ra["config"].pop("jobs"), rb["config"].pop("jobs")
    assert ra == rb


def test_broken_identity_fails(monkeypatch, capsys):
    raw = dict(lookup("d1st1").raw)
    raw["num"] = ["[d2-a1]_N", "[d1+d2-a2-a3+1]_N"]
    bad = build(raw)
    real = runner.lookup
    monkeypatch.setattr(runner, "lookup", lambda n: bad if n == "d1st1" else real(n))
    code, out, _ = run(["verify", "--samples", "5", "--filter", "d1st1", "--jobs", "1"], capsys)
    assert code == 1
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    row = rep["results"]["identities"][0]
    assert row["status"] == "fail" and row["failed_samples"]


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["verify", "--samples", "0"], ["verify", "--tol", "-1"], ["verify", "--nome", "1.5"],
    ["verify", "--filter", "nothing*"], ["eval", "nofamily"], ["eval", "4f3", "--param", "a1"],
    ["eval", "4f3", "--param", "a1=1/2"], ["verify", "--seed", "x"],
])
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""


def test_bad_jobs_env(monkeypatch, capsys):
    monkeypatch.setenv("HYPERSYM_JOBS", "x")
    assert run(["verify"] + FAST, capsys)[0] == 2
    monkeypatch.setenv("HYPERSYM_JOBS", "0")
    assert run(["verify"] + FAST, capsys)[0] == 2


def test_env_overrides_flag(monkeypatch):
    monkeypatch.setenv("HYPERSYM_JOBS", "3")
    assert runner.effective_jobs(1) == 3
    monkeypatch.delenv("HYPERSYM_JOBS")
    assert runner.effective_jobs(4) == 4


def test_groups(capsys):
    code, out, _ = run(["groups"], capsys)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    flagged = [r for rows in rep["results"].values() for r in rows if r["status"] == "flagged"]
    assert len(flagged) == 1 and flagged[0]["observed"] == 1920


def test_typos_low_confidence(capsys):
    code, out, err = run(["typos", "--samples", "2"], capsys)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert "low confidence" in err
    assert rep["warnings"] and "low confidence" in rep["warnings"][0]
    statuses = {r["status"] for r in rep["results"]["ambiguities"] + rep["results"]["corrections"]}
    assert "MISMATCH" not in statuses
    assert code == (0 if statuses == {"UNIQUE"} else 1)


def test_eval_exact(capsys):
    code, out, _ = run(["eval", "4f3", "--param", "N=0", "--param", "a1=1/2", "--param", "a2=1/3",
                        "--param", "a3=1/4", "--param", "d1=1/5", "--param", "d2=1/6"], capsys)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["results"]["value"] == "1/1"
    from fractions import Fraction as F
    d3 = F(1, 2) + F(1, 3) + F(1, 4) + 1 - F(1, 5) - F(1, 6)
    assert rep["results"]["point"]["values"]["d3"] == f"{d3.numerator}/{d3.denominator}"


def test_eval_two_terms(capsys):
    # N=1: 1 + (-1)(a1 a2 a3)/(d1 d2 d3)
    from fractions import Fraction as F
    a, d1, d2 = [F(1, 2), F(1, 3), F(1, 4)], F(1, 5), F(1, 6)
    d3 = sum(a) - d1 - d2
    want = 1 - a[0] * a[1] * a[2] / (d1 * d2 * d3)
    code, out, _ = run(["eval", "4f3", "--param", "N=1", "--param", "a1=1/2", "--param", "a2=1/3",
                        "--param", "a3=1/4", "--param", "d1=1/5", "--param", "d2=1/6"], capsys)
    assert json.loads(out)["results"]["value"] == f"{want.numerator}/{want.denominator}"


def test_eval_elliptic_from_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"s": "0.3+0.1i", "c0": "0.2", "c1": "0.1-0.2i", "c2": "0.4", "d0": "0.3",
                             "d1": "-0.1", "m": "0,0", "x": "0,0.3"}))
    code, out, _ = run(["eval", "enm", "--params", str(f)], capsys)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert code == 0 and rep["results"]["value"] == "1+0i"


def test_eval_pole_reports_error(capsys):
    code, out, _ = run(["eval", "4f3", "--param", "N=2", "--param", "a1=1/2", "--param", "a2=1/3",
                        "--param", "a3=1/4", "--param", "d1=-1", "--param", "d2=1/6"], capsys)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    assert code == 1 and rep["status"] == "error"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hypersym", "groups", "--out", os.devnull],
                       capture_output=True, text=True)
    assert r.returncode == 0
