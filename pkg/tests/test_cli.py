import csv
import io
import json

import pytest

from kappamink.cli import run
from kappamink.weyl import WeylElement


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_star_example(capsys):
    code, out, _ = call(capsys, "star", "x1", "x0", "--family", "abelian", "--param", "0", "--order", "4")
    assert code == 0
    assert out.strip() == "x0*x1 - ı*h*x1"


def test_star_theta(capsys):
    code, out, _ = call(capsys, "star", "x0", "x1", "--family", "theta", "--theta", "0,1;-1,0", "--order", "3")
    assert code == 0 and out.strip() == "x0*x1 + 1/2*ı*h"


def test_parse_error_exit_code(capsys):
    code, _, err = call(capsys, "star", "x1 +", "x0", "--family", "abelian", "--param", "0")
    assert code == 2 and "position 4" in err


def test_verify_twists_json(capsys):
    code, out, _ = call(capsys, "--format", "json", "verify", "twists", "--family", "jordanian", "--param", "3",
                        "--order", "3")
    assert code == 0
    rows = json.loads(out)
    assert rows and all(r["pass"] for r in rows)
    assert {r["check"] for r in rows} >= {"cocycle", "normalization", "[x0,x1]_star = i h x1"}


def test_verify_twists_tables(capsys):
    code, out, _ = call(capsys, "--format", "json", "verify", "twists", "--family", "abelian", "--param", "1/2",
                        "--order", "2", "--tables")
    rows = json.loads(out)
    assert code == 0
    assert any(r["check"].startswith("table coproduct L^0_1") for r in rows)
    assert any(r["check"] == "coproduct homomorphism" for r in rows)


@pytest.mark.parametrize("args", [["hopf", "--order", "3"], ["hopf", "--basis", "qanalog", "--kappa", "2"],
                                  ["dsr", "--order", "3"], ["dsr", "--realization", "minimal", "--order", "3"],
                                  ["dsr", "--realization", "noncovariant", "--samples", "2", "--order", "3"]])
def test_verify_suites_pass(capsys, args):
    code, out, _ = call(capsys, "--format", "json", "verify", *args)
    assert code == 0
    assert all(r["pass"] for r in json.loads(out))


def test_coproduct_json_round_trip(capsys):
    code, out, _ = call(capsys, "--format", "json", "coproduct", "P_1", "--family", "abelian", "--param", "1",
                        "--order", "3")
    assert code == 0
    w = WeylElement.from_json(out)
    assert w.to_json() == out.strip()


def test_coproduct_classical_basis(capsys):
    code, out, _ = call(capsys, "coproduct", "N_1", "--basis", "classical", "--order", "2")
    assert code == 0 and "[N1 (x) 1]" in out


def test_rmatrix_qybe(capsys):
    code, out, _ = call(capsys, "rmatrix", "--family", "jordanian", "--param", "1", "--order", "2", "--check-qybe")
    assert code == 0 and "QYBE" in out


def test_realization(capsys):
    code, out, _ = call(capsys, "realization", "--family", "abelian", "--param", "1", "--order", "2")
    assert code == 0
    assert "x1_star = x1" in out


def test_dispersion_csv(capsys):
    code, out, _ = call(capsys, "dispersion", "--model", "jordanian", "--param", "3", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert (row["b1"], row["b2"], row["B1"], row["B2"]) == ("-2", "14/3", "-4", "-6")


def test_dispersion_series_route(capsys):
    code, out, _ = call(capsys, "--format", "json", "dispersion", "--psi", "1,-3,2", "--gamma", "0")
    assert code == 0
    row = json.loads(out)[0]
    assert (row["b1"], row["b2"]) == ("1", "1")


def test_delay_flat_and_cosmological(capsys):
    code, out, _ = call(capsys, "--format", "json", "delay", "--model", "abelian", "--param", "1",
                        "--E", "1000", "--l-mpc", "100", "--z", "0.9", "--dE", "10")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 2 and all(r["delay_s"] < 0 for r in rows)


def test_delay_out_of_regime(capsys):
    code, _, _ = call(capsys, "delay", "--model", "abelian", "--param", "1", "--E", "1e20", "--l-mpc", "1")
    assert code == 2


def test_bounds(capsys):
    code, out, _ = call(capsys, "--format", "json", "bounds", "--model", "jordanian-hermitian")
    assert code == 0
    assert json.loads(out)[0]["bound_GeV"] == pytest.approx(2.88e18)
    code, out, _ = call(capsys, "--format", "json", "bounds", "--model", "abelian", "--parameter")
    assert json.loads(out)[0]["bound"] == pytest.approx(0.604, rel=1e-3)
    code, _, _ = call(capsys, "bounds", "--model", "jordanian", "--param", "-1")
    assert code == 2


def test_csv_twelve_significant_digits(capsys):
    code, out, _ = call(capsys, "--format", "csv", "bounds", "--model", "jordanian-hermitian")
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["bound_GeV"] == "2.88e+18"
    code, out, _ = call(capsys, "--format", "csv", "delay", "--model", "abelian", "--param", "1", "--E", "1000",
                        "--l-mpc", "100")
    row = next(csv.DictReader(io.StringIO(out)))
    mantissa = row["delay_s"].lstrip("-").split("e")[0].replace(".", "").lstrip("0")
    assert len(mantissa) == 12


def test_schouten(capsys):
    code, out, _ = call(capsys, "--format", "json", "schouten")
    assert code == 0 and all(r["pass"] for r in json.loads(out))


def test_order_validation(capsys):
    assert call(capsys, "--order", "1", "schouten")[0] == 2
    assert call(capsys, "schouten", "--order", "17")[0] == 2


def test_config_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("order = 3\nformat = json\n")
    monkeypatch.setenv("KAPPAMINK_ORDER", "5")
    code, out, _ = call(capsys, "--config", str(cfg), "verify", "twists", "--family", "abelian", "--param", "1")
    assert code == 0
    assert {r["order"] for r in json.loads(out)} == {3}
    code, out, _ = call(capsys, "--config", str(cfg), "verify", "twists", "--family", "abelian", "--param", "1",
                        "--order", "2")
    assert {r["order"] for r in json.loads(out)} == {2}
    code, out, _ = call(capsys, "--format", "json", "verify", "twists", "--family", "abelian", "--param", "1")
    assert {r["order"] for r in json.loads(out)} == {5}


def test_failing_check_exit_one(capsys, monkeypatch):
    import kappamink.twist as twist

    original = twist.check_cocycle
    monkeypatch.setattr(twist, "check_cocycle", lambda tw: original(tw.corrupted()))
    code, _, _ = call(capsys, "verify", "twists", "--family", "abelian", "--param", "1/2", "--order", "3")
    assert code == 1
