import csv
import io
import json

import pytest

from qclrs.cli import main, tau_grid
from qclrs.counting import closed_form_S0


def run(capsys, *argv):
    assert main(list(argv)) == 0
    out = capsys.readouterr().out
    return list(csv.DictReader(io.StringIO(out))), out


def test_dim_examples(capsys):
    rows, _ = run(capsys, "dim", "--family", "qclrs", "--ell", "3", "--r", "3", "4")
    assert [(r["r"], r["k"], r["rate"]) for r in rows] == [("3", "10", "0.15625"), ("4", "6", "0.09375")]


def test_dim_by_d_and_full_range(capsys):
    rows, _ = run(capsys, "dim", "--family", "lrs", "--ell", "3", "--d", "4", "3")
    assert [r["k"] for r in rows] == ["10", "6"]
    rows, _ = run(capsys, "dim", "--ell", "2")
    assert [r["r"] for r in rows] == ["1", "2", "3"]
    # r = q - 1 is d = 1: only the constant survives
    assert rows[-1]["k"] == "1"


def test_dim_rejects_bad_r(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim", "--ell", "3", "--r", "8"])
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_bounds_ell5(capsys):
    rows, _ = run(capsys, "bounds", "--ell", "5")
    assert len(rows) == 8
    rates = [float(r["rate"]) for r in rows]
    assert all(a > b for a, b in zip(rates, rates[1:]))
    for r in rows:
        assert float(r["rate_lb"]) <= float(r["rate"]) <= float(r["rate_ub"])
    assert float(rows[0]["rate_ub"]) == pytest.approx(1 - closed_form_S0(5, 1) / 1024)


def test_bounds_range_checked():
    with pytest.raises(SystemExit):
        main(["bounds", "--ell", "5", "--r", "9"])


def test_count(capsys):
    rows, _ = run(capsys, "count", "--ell", "2", "3", "--r", "1")
    assert rows[0]["S0"] == "10" and rows[0]["S1"] == "4"
    for r in rows:
        assert r["S0"] == r["S0_recursion"]
        assert round(float(r["S0_closed_form"])) == int(r["S0"])
    rows, _ = run(capsys, "count", "--ell", "4", "--r", "2")
    assert rows[0]["S0_closed_form"] == ""


def test_deduct_q(capsys):
    rows, _ = run(capsys, "deduct-q", "--ell", "4", "--i", "4", "--j", "10")
    assert (rows[0]["i_prime"], rows[0]["j_prime"]) == ("0", "2")


def test_deduct_q_invalid_exits_nonzero(capsys):
    assert main(["deduct-q", "--ell", "4", "--i", "1", "--j", "2"]) == 1
    assert "error" in capsys.readouterr().err


def test_simulate(capsys):
    rows, _ = run(
        capsys, "simulate", "--family", "lrs", "--ell", "3", "--r", "4",
        "--tau-min", "0", "--tau-max", "0.6", "--tau-step", "0.3", "--trials", "2000",
    )
    assert [r["tau"] for r in rows] == ["0", "0.3", "0.6"]
    assert float(rows[0]["fail_rate"]) == 0.0
    assert all(r["closed_form"] for r in rows)
    rows, _ = run(capsys, "simulate", "--ell", "3", "--d", "5", "--tau-min", "0.5", "--tau-max", "0.5", "--trials", "100")
    assert rows[0]["closed_form"] == ""


def test_simulate_needs_one_of_d_r():
    with pytest.raises(SystemExit):
        main(["simulate", "--ell", "3"])
    with pytest.raises(SystemExit):
        main(["simulate", "--ell", "3", "--d", "4", "--r", "4"])


def test_default_tau_grid():
    grid = tau_grid(0.30, 1.00, 0.02)
    assert len(grid) == 36
    assert grid[0] == 0.3 and grid[-1] == 1.0
    with pytest.raises(Exception):
        tau_grid(0.5, 0.4, 0.1)


def test_output_file_and_manifest(tmp_path, capsys):
    out = tmp_path / "sub" / "dim.csv"
    assert main(["dim", "--ell", "3", "--r", "3", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    data = out.read_bytes()
    assert data.startswith(b"r,k,rate\n") and b"\r" not in data
    manifest = json.loads((tmp_path / "sub" / "dim.csv.manifest.json").read_text())
    assert manifest["command"] == "dim"
    assert manifest["params"]["ell"] == 3
    assert manifest["output"] == "dim.csv"


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["dim", "--ell", "2", "--out", str(blocker / "x.csv")]) == 1
    assert str(blocker) in capsys.readouterr().err


def test_figures_small(tmp_path):
    args = ["figures", "--trials", "300", "--tau-step", "0.35", "--seed", "3"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("fig1_q32.csv", "fig2_q8.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert (tmp_path / "a" / (name + ".manifest.json")).exists()
    fig1 = list(csv.DictReader(open(tmp_path / "a" / "fig1_q32.csv")))
    assert [r["r"] for r in fig1] == [str(r) for r in range(1, 9)]
    fig2 = list(csv.DictReader(open(tmp_path / "a" / "fig2_q8.csv")))
    series = {(r["family"], r["dim"], r["r"]) for r in fig2}
    assert series == {("lrs", "10", "4"), ("qclrs", "10", "3"), ("lrs", "6", "5"), ("qclrs", "6", "4")}
