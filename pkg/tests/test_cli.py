import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from bjortho.cli import main
from bjortho.suites import CSV_COLUMNS

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_example1(capsys):
    code, out, _ = run(capsys, "check", str(DATA / "example1_check.json"))
    d = json.loads(out)
    assert code == 0 and d["agreement"] is True
    assert d["criterion"]["orthogonal"] and d["oracle"]["orthogonal"]
    assert d["criterion"]["lhs"] == pytest.approx(2 ** 0.5, abs=1e-9)


def test_check_g_zero(capsys):
    code, out, _ = run(capsys, "check", str(DATA / "g_zero_check.json"))
    d = json.loads(out)
    assert code == 0 and d["agreement"] and d["criterion"]["orthogonal"]


def test_check_final_example(capsys):
    code, out, _ = run(capsys, "check", str(DATA / "final_example_check.json"))
    d = json.loads(out)
    assert (d["criterion"]["lhs"], d["criterion"]["rhs"]) == (4.0, 5.0)
    assert code == 0


@pytest.mark.parametrize("crit", ["direct", "keckic", "lp", "scalar-lp"])
def test_check_criterion_override(capsys, crit):
    code, out, _ = run(capsys, "check", str(DATA / "final_example_check.json"),
                       "--criterion", crit, "--p", "2")
    assert code == 0 and json.loads(out)["criterion"]["criterion"] == crit


def test_check_csv_and_out(tmp_path, capsys):
    out_path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "check", str(DATA / "example1_check.json"),
                       "--format", "csv", "--out", str(out_path))
    rows = list(csv.DictReader(out_path.open()))
    assert code == 0 and out == ""
    assert [r["name"] for r in rows] == ["criterion", "oracle"]


def test_parse_error_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 1,\n  "f": [1, 2,,]}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "line 2" in err and "column 14" in err


@pytest.mark.parametrize("argv", [
    ["check", "/no/such/file.json"], ["verify"], ["verify", "nope"],
    ["verify", "light", "--trials", "0"], ["repro", "tensor-linf"], [],
    ["check", "DATA/example1_check.json", "--p", "1,2"],
])
def test_usage_errors(capsys, argv):
    argv = [a.replace("DATA", str(DATA)) for a in argv]
    assert main(argv) == 2


def test_incompatible_input(tmp_path, capsys):
    d = json.loads((DATA / "example1_check.json").read_text())
    d["g"]["measure"]["weights"] = [2.0] * 5
    p = tmp_path / "x.json"
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "different measures" in err


def test_approx(capsys):
    code, out, _ = run(capsys, "approx", str(DATA / "approx_l3.json"))
    d = json.loads(out)
    assert code == 0 and d["certified"] and len(d["coefficients"]) == 2


@pytest.mark.parametrize("ex", ["tensor-hilbert", "tensor-l1l1"])
def test_repro_identical_bytes(capsys, ex):
    code1, out1, _ = run(capsys, "repro", ex)
    code2, out2, _ = run(capsys, "repro", ex)
    assert code1 == code2 == 0 and out1 == out2


def test_verify_csv(capsys):
    code, out, err = run(capsys, "verify", "crit-vs-oracle", "--trials", "4",
                         "--format", "csv", "--seed", "9")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert tuple(rows[0])[: len(CSV_COLUMNS)] == CSV_COLUMNS
    assert json.loads(err)["failures"] == 0
    _, out2, _ = run(capsys, "verify", "--suite", "crit-vs-oracle", "--trials", "4",
                     "--format", "csv", "--seed", "9")
    assert out == out2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "duality-map", "--trials", "2")
    d = json.loads(out)
    assert code == 0 and d["summary"]["trials"] == 6


def test_verify_failure_exit(capsys, monkeypatch):
    from bjortho import suites

    def broken(cfg):
        rep = suites.SuiteReport("light", cfg)
        rep.add({}, failed=True, violation=1.0)
        return rep
    monkeypatch.setitem(suites.RUNNERS, "light", broken)
    assert main(["verify", "light", "--trials", "1"]) == 1


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "bjortho.cli", "repro", "tensor-l1l1",
                          "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("name,value,expected,ok")
