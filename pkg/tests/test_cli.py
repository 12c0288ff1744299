"""Command-line interface: subcommands, exit codes, JSON contracts."""

import json

import pytest

from jacobilift.cli import main
from jacobilift.series import series_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_phi01(capsys):
    code, out, _ = run(capsys, "expand", "phi01", "--qmax", "2")
    assert code == 0
    assert "(y+10+y^-1)" in out
    assert "10*y^2-64*y+108-64*y^-1+10*y^-2" in out


def test_expand_polynomial_relation(capsys):
    code, out, _ = run(capsys, "expand", "Phi1*Phi3-Phi2^2", "--qmax", "1")
    assert code == 0
    assert "(4*y+4+4*y^-1)" in out


def test_expand_xi06_json(capsys):
    code, out, _ = run(capsys, "expand", "xi06", "--qmax", "2", "--json")
    assert code == 0
    data = json.loads(out)
    series = series_from_dict(data["series"])
    assert series.min_key()[0] == 24  # first key at q^1


def test_expand_parse_failure(capsys):
    code, _, err = run(capsys, "expand", "Phi1*Phi9")
    assert code == 2 and "error" in err


def test_expand_inhomogeneous_rejected(capsys):
    code, _, _ = run(capsys, "expand", "Phi1+Phi2")
    assert code == 2


def test_genus_k3(capsys):
    code, out, _ = run(capsys, "genus", "--d", "2", "--chi", "2,-20,2",
                       "--qmax", "1")
    assert code == 0
    assert "(2*y+20+2*y^-1)" in out


def test_genus_d4_rejection(capsys):
    code, _, err = run(capsys, "genus", "--d", "4", "--chi", "1,4,7,4,1")
    assert code == 3
    assert "e(M4) mod 6" in err


def test_genus_d5_euler(capsys):
    code, out, _ = run(capsys, "genus", "--d", "5", "--euler", "24",
                       "--qmax", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["chi"] == [0, -1, 11, -11, 1, 0]


def test_genus_d5_euler_rejected(capsys):
    code, _, err = run(capsys, "genus", "--d", "5", "--euler", "23")
    assert code == 2 and "24" in err


def test_lift_explift_json_roundtrip(capsys):
    code, out, _ = run(capsys, "lift", "explift", "--form", "2*Phi1",
                       "--qmax", "2", "--smax", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["weight2"] == 10 * 2  # Delta5^2 has weight 10
    series = series_from_dict({k: data[k] for k in ("den", "qprec", "terms")})
    assert series.coeff((24, -4, 24)) == 1


def test_lift_arith_table(capsys):
    code, out, _ = run(capsys, "lift", "arith", "--name", "Delta2",
                       "--bound", "2")
    assert code == 0
    assert "q^(1/4)" in out


def test_lift_sqeg(capsys):
    code, out, _ = run(capsys, "lift", "sqeg", "--d", "2", "--chi", "2,-20,2",
                       "--qmax", "2", "--pmax", "2", "--json")
    assert code == 0
    data = json.loads(out)
    series = series_from_dict(data)
    assert series.coeff((0, 0, 0)) == 1
    assert series.coeff((0, 4, 24)) == 2  # p^1 coefficient is the K3 genus


def test_lift_missing_form(capsys):
    code, _, _ = run(capsys, "lift", "explift")
    assert code == 2


def test_verify_hecke(capsys):
    code, out, _ = run(capsys, "verify", "hecke")
    assert code == 0
    assert "suite hecke: ok" in out


def test_verify_json_shape(capsys):
    code, out, _ = run(capsys, "verify", "hecke", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["suite"] == "hecke"
    assert all("name" in c and "ok" in c for c in data["checks"])


def test_determinism(capsys):
    _, out1, _ = run(capsys, "expand", "phi02", "--qmax", "3", "--json")
    _, out2, _ = run(capsys, "expand", "phi02", "--qmax", "3", "--json")
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "expand", "phi01", "--qmax", "1", "--json",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["weight2"] == 0
