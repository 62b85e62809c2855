import csv
import io
import json
import math

import pytest

from qutrit_ybe.cli import EXIT_CONFIG, EXIT_DEGENERATE, EXIT_FAIL, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["pass"] and report["n_checks"] >= 40
    assert all({"name", "residual", "tolerance", "pass", "paper_anchor"} <= set(r) for r in report["records"])


def test_verify_zero_trials(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "0")
    assert code == EXIT_OK and json.loads(out)["trials"] == 0


def test_verify_self_test_negative(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "0", "--self-test-negative")
    assert code == EXIT_FAIL
    failed = [r["name"] for r in json.loads(out)["records"] if not r["pass"] and not r["informational"]]
    assert failed == ["ybe.grid"]


def test_verify_is_byte_identical(capsys):
    _, a, _ = run(capsys, "verify", "--trials", "2", "--seed", "3")
    _, b, _ = run(capsys, "verify", "--trials", "2", "--seed", "3")
    assert a == b


def test_negativity_sweep_csv(capsys):
    code, out, _ = run(capsys, "negativity-sweep", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert list(rows[0]) == ["theta", "N_closed", "N_numeric", "abs_diff"]
    assert len(rows) == 61
    assert float(rows[0]["N_closed"]) == 0 and float(rows[0]["N_numeric"]) < 1e-14
    third = [r for r in rows if abs(float(r["theta"]) - math.pi / 3) < 1e-12]
    assert len(third) == 1 and f"{float(third[0]['N_closed']):.7f}" == "1.0000000"
    assert all(float(r["abs_diff"]) < 1e-10 for r in rows)


def test_berry_reference_point(capsys):
    code, out, _ = run(capsys, "berry", "--theta", str(math.pi / 2), "--omega1", "1", "--omega2", "2",
                       "--subsystem", "1", "--band", "+", "--steps", "2048")
    rec = json.loads(out)
    assert code == EXIT_OK
    assert rec["numeric_phase"] == pytest.approx(-0.17967, abs=1e-5)
    assert rec["analytic_phase"] == pytest.approx(-0.1796708, abs=1e-6)


def test_berry_zero_band(capsys):
    code, out, _ = run(capsys, "berry", "--band", "0", "--steps", "64")
    assert code == EXIT_OK and abs(json.loads(out)["numeric_phase"]) < 1e-8


def test_berry_degenerate_exit(capsys):
    code, out, err = run(capsys, "berry", "--theta", "0")
    assert code == EXIT_DEGENERATE and out == "" and "degenerate" in err


def test_berry_zero_loop_frequency_exit(capsys):
    code, _, err = run(capsys, "berry", "--omega1", "1", "--omega2", "-1", "--subsystem", "1")
    assert code == EXIT_DEGENERATE and "nonzero" in err


def test_berry_not_converged_exit(capsys):
    code, _, err = run(capsys, "berry", "--steps", "16")
    assert code == EXIT_FAIL and "not converged" in err


@pytest.mark.parametrize("argv", [
    ["spectrum", "--subsystem", "4"],
    ["berry", "--band", "up"],
    ["verify", "--trials", "-1"],
    ["spectrum", "--hbar", "0"],
    ["negativity-sweep", "--steps", "1"],
    ["rmatrix", "--theta", "nan"],
    ["rmatrix", "--format", "xml"],
    ["nonsense"],
])
def test_config_errors(capsys, argv):
    assert main(argv) == EXIT_CONFIG


@pytest.mark.parametrize("order,entry", [("paper", (1, 2)), ("lex", (1, 3))])
def test_rmatrix_orders(capsys, order, entry):
    # <10|R|01> = a/3; in display order |01> is the third ket, in lex order the fourth
    code, out, _ = run(capsys, "rmatrix", "--theta", "0.7", "--order", order)
    m = json.loads(out)["R"]
    re, im = m[entry[0]][entry[1]]
    assert code == EXIT_OK
    assert re == pytest.approx(0.0, abs=1e-15) and im == pytest.approx(-2 * math.sin(0.7) / 3)


def test_rmatrix_csv_long_format(capsys):
    _, out, _ = run(capsys, "rmatrix", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 81
    assert list(rows[0]) == ["object", "row", "col", "row_label", "col_label", "re", "im"]
    assert rows[2]["col_label"] == "|01>"


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--theta", "1.1", "--t", "0.4")
    rep = json.loads(out)
    assert code == EXIT_OK and len(rep["rows"]) == 9
    assert max(r["abs_diff"] for r in rep["rows"]) < 1e-10


def test_blocks_to_file(tmp_path, capsys):
    path = tmp_path / "blocks.json"
    code, out, _ = run(capsys, "blocks", "--theta", "0.9", "--t", "0.2", "--out", str(path))
    rep = json.loads(path.read_text())
    assert code == EXIT_OK and out == ""
    assert rep["off_pattern_norm"] < 1e-12
    assert set(rep["blocks"]) == {"1", "2", "3"}
    assert len(rep["OHOt"]) == 9


def test_blocks_csv(capsys):
    _, out, _ = run(capsys, "blocks", "--format", "csv")
    objects = {r["object"] for r in csv.DictReader(io.StringIO(out))}
    assert objects == {"H", "block1", "block2", "block3", "OHOt"}
