import json

import pytest

from qca.cli import SuiteConfig, UsageError, main, run_suite
from qca.report import CheckReport


def test_ybe_suite_passes(capsys):
    assert main(["--suite", "ybe", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "summary: 2/2 PASS" in out


def test_perturbed_suite_fails_with_witness(capsys):
    assert main(["--suite", "ybe", "--n", "1", "--perturb", "--format", "json"]) == 1
    d = json.loads(capsys.readouterr().out)
    w = d["items"][0]["witness"]
    assert set(w["assignment"]) == {"u", "v", "q"}
    assert w["lhs"].startswith("[") and w["rhs"].startswith("[")


def test_usage_errors(capsys):
    assert main(["--suite", "rll", "--n", "0"]) == 2
    assert main(["--suite", "rll", "--q-mode", "pinned:1"]) == 2
    assert main(["--suite", "rll", "--fusion", "2", "--params", "3"]) == 2
    with pytest.raises(SystemExit):
        main(["--suite", "nope"])
    with pytest.raises(SystemExit):
        main(["--suite", "ybe", "--workers", "0"])


def test_dimension_guard(capsys):
    assert main(["--suite", "gauss", "--n", "3", "--fusion", "4"]) == 2
    assert "46656" in capsys.readouterr().err
    with pytest.raises(UsageError):
        run_suite(SuiteConfig("all", n=4, fusion=3))


def test_json_round_trip_and_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["--suite", "cartan", "--n", "3", "--format", "json", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    r = CheckReport.from_json(out.read_text())
    assert r.to_json() == CheckReport.from_json(printed).to_json()
    assert list(json.loads(printed)) == ["suite", "params", "items", "summary"]
    assert main(["--suite", "cartan", "--n", "1", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "report.json").exists()


def test_empty_and_single_reports():
    empty = CheckReport("ybe")
    assert empty.summary() == {"passed": 0, "total": 0, "status": "PASS"}
    one = CheckReport("ybe")
    one.add("x", "anchor", "PASS", millis=1.5)
    d = json.loads(one.to_json())
    assert len(d["items"]) == 1 and d["summary"]["passed"] == 1
    assert "millis" not in json.loads(one.to_json(timing=False))["items"][0]


def test_workers_env_and_determinism(monkeypatch, capsys):
    monkeypatch.setenv("QCA_WORKERS", "2")
    args = ["--suite", "all", "--n", "1", "--fusion", "1", "--trunc", "2", "--format", "json",
            "--no-timing", "--q-mode", "pinned:3/5"]
    assert main(args) == 0
    first = capsys.readouterr().out
    monkeypatch.setenv("QCA_WORKERS", "1")
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_numeric_params_for_operator_suites():
    cfg = SuiteConfig("gauss", n=2, fusion=2, params="a,b")
    assert cfg.numeric_params() == [3, 7]
    assert cfg.symbolic_params() == ["a", "b"]
    assert SuiteConfig("gauss", fusion=2, params="2,5").numeric_params() == [2, 5]


def test_dump(tmp_path, capsys):
    assert main(["--suite", "gauss", "--n", "1", "--fusion", "1", "--params", "2",
                 "--dump", str(tmp_path)]) == 0
    lines = (tmp_path / "L.txt").read_text().splitlines()
    assert lines[0].startswith("# n=1 m=1")
    assert any(l.startswith("l_1,1 ") for l in lines)
    assert (tmp_path / "h.txt").exists()
