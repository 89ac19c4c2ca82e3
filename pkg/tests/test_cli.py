import csv
import io
import json
import subprocess
import sys

import pytest

from fhtoeplitz import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bulk_csv(capsys):
    code, out, _ = run(["bulk", "--n", "16"], capsys)
    assert code == 0
    table = rows(out)
    assert list(table[0]) == cli.BULK_COLUMNS
    assert len(table) == 16
    assert max(float(r["abs_error"]) for r in table) < 1e-9


def test_bulk_is_deterministic(capsys):
    a = run(["bulk", "--n", "12", "--symbol", "expcos"], capsys)[1]
    b = run(["bulk", "--n", "12", "--symbol", "expcos"], capsys)[1]
    assert a == b


def test_bulk_writes_corollary(tmp_path, capsys):
    out = tmp_path / "bulk.csv"
    code, _, _ = run(["bulk", "--n", "32", "--out", str(out)], capsys)
    assert code == 0 and out.exists()
    report = json.loads((tmp_path / "bulk.corollary.json").read_text())
    assert report["corollary"][0]["n"] == 32


def test_bulk_json(capsys):
    code, out, _ = run(["bulk", "--n", "8", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["columns"] == cli.BULK_COLUMNS and len(doc["rows"]) == 8


def test_bulk_rejects_two_level(capsys):
    code, _, err = run(["bulk", "--symbol", "twolevel-p1q4"], capsys)
    assert code == 1 and "smooth symbol required" in err


def test_gap(capsys):
    code, out, err = run(["gap", "--n", "128"], capsys)
    assert code == 0 and "near period q = 4" in err
    table = rows(out)
    assert list(table[0]) == cli.GAP_COLUMNS
    assert all(float(r["distance_times_n_log_n"]) < 2 for r in table if r["distance"])


def test_gap_irrational_arc(tmp_path, capsys):
    cfg = tmp_path / "t.cfg"
    cfg.write_text("kind = two_level\ngamma = 0.2\ntheta1 = 1\ntheta2 = 2.5\n")
    code, _, err = run(["gap", "--config", str(cfg)], capsys)
    assert code == 1 and "2*pi*p/q" in err


def test_dets_builtins(capsys):
    code, out, _ = run(["dets", "--symbol", "szego-anchor", "--n", "4,8,16"], capsys)
    table = rows(out)
    assert code == 0 and list(table[0]) == cli.DETS_COLUMNS
    errs = [abs(float(r["log_det_exact"]) - float(r["log_det_asymptotic"])) for r in table]
    assert errs[0] > errs[1] > errs[2]
    code, out, _ = run(["dets", "--symbol", "identity", "--n", "5"], capsys)
    assert code == 0 and float(rows(out)[0]["log_det_exact"]) == 0


def test_dets_two_level(capsys):
    code, out, _ = run(["dets", "--symbol", "twolevel-p1q4", "--lam", "1.3", "--n", "32,64"], capsys)
    assert code == 0 and float(rows(out)[0]["fitted_slope"]) < -0.7


def test_dets_fisher_hartwig_config(tmp_path, capsys):
    cfg = tmp_path / "fh.cfg"
    cfg.write_text("kind = fisher_hartwig\nthetas = 0, 2.0\nalphas = 0, 0.25\nbetas = 0, 0.2j\n")
    code, out, _ = run(["dets", "--config", str(cfg), "--n", "16"], capsys)
    assert code == 0 and rows(out)[0]["log_det_exact"] == ""
    cfg.write_text("kind = fisher_hartwig\nthetas = 0, 2.0\nalphas = 0, 0.2\nbetas = 0, -1.2\n")
    code, _, err = run(["dets", "--config", str(cfg), "--n", "16"], capsys)
    assert code == 1


def test_slepian(capsys):
    code, out, _ = run(["slepian", "--c", "16"], capsys)
    table = rows(out)
    assert code == 0 and list(table[0]) == cli.SLEPIAN_COLUMNS
    assert table[0]["n"] == "256"
    code, _, _ = run(["slepian", "--delta", "1"], capsys)
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["bulk", "--n", "x"],
        ["bulk", "--n", "0"],
        ["bulk", "--symbol", "nope"],
        ["bulk", "--symbol", "tridiag3", "--config", "x.cfg"],
        ["dets", "--config", "/nonexistent/file.cfg"],
        ["frobnicate"],
    ],
)
def test_validation_errors(argv, capsys):
    assert run(argv, capsys)[0] == 1


def test_verify_subset(capsys):
    code, out, _ = run(["verify", "--criteria", "1"], capsys)
    assert code == 0
    assert "criterion  1 PASS" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "fhtoeplitz", "bulk", "--n", "4"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout.startswith("n,j,")
