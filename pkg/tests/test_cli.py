import json
import subprocess
import sys
from pathlib import Path

import pytest

from mhessian.cli import main, read_forms
from mhessian.errors import ParseError
from mhessian.polyring import parse_poly

CURVES = Path(__file__).resolve().parent.parent / "curves"
FERMAT = str(CURVES / "fermat_cubic.txt")
BINARY = str(CURVES / "binary_pair.txt")
SPACE = str(CURVES / "space_22.txt")
BAD = str(CURVES / "bad.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_read_forms():
    names, forms = read_forms("# a comment\nvars: a b c\nF1 = a^3 + b^3 + c^3  # Fermat\n")
    assert names == ["a", "b", "c"] and forms[0] == parse_poly("x0^3 + x1^3 + x2^3")
    with pytest.raises(ParseError):
        read_forms("F1 = x0")
    with pytest.raises(ParseError):
        read_forms("vars: x x\nF1 = x")


def test_degrees(capsys):
    code, out, _ = run(capsys, "degrees", "-f", FERMAT, "-m", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["command"] == "degrees"
    assert "36" in out and "12" in out


def test_hessian1(capsys):
    code, out, _ = run(capsys, "hessian1", "-f", FERMAT)
    assert code == 0 and out.strip() == "216*x0*x1*x2"


def test_mhessian_text_and_json(capsys):
    code, out, _ = run(capsys, "mhessian", "-f", FERMAT)
    assert code == 0
    assert "ambient_degree = 3" in out and "degree check: OK" in out and "MATCH" in out
    code, out, _ = run(capsys, "mhessian", "-f", FERMAT, "--json")
    data = json.loads(out)
    assert data["ambient_degree"] == 3 and data["verification"]["classical_hessian"]["match"]
    # polynomials round-trip through the parser
    A = parse_poly(data["numerator"], nx=3)
    B = parse_poly(data["denominator"], nx=3)
    assert A.x_degree() - B.x_degree() == 3


def test_flexweight(capsys):
    code, out, _ = run(capsys, "flexweight", "-f", FERMAT, "--point", "1,-1,0")
    assert code == 0 and out.strip() == "weight(1,-1,0) = 1"
    code, out, _ = run(capsys, "flexweight", "-f", FERMAT, "--point", "1,-1,0", "-m", "2")
    assert code == 0 and out.strip().endswith("= 1")


def test_resultant(capsys):
    code, out, _ = run(capsys, "resultant", "-f", BINARY)
    assert code == 0
    assert out.splitlines()[0] in ("resultant = 19", "resultant = -19")
    assert "agree up to sign" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-f", FERMAT)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8 and all(l.startswith("PASS") for l in lines)


def test_space_curve_degrees(capsys):
    code, out, _ = run(capsys, "degrees", "-f", SPACE, "--json")
    assert code == 0 and json.loads(out)["command"] == "degrees"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "degrees", "-f", BAD)
    assert code == 2 and err.startswith("parse error: line 2, column 13")
    code, _, err = run(capsys, "degrees", "-f", str(CURVES / "missing.txt"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "flexweight", "-f", FERMAT, "--point", "1,2")
    assert code == 2


def test_math_error_exit_code(capsys, tmp_path):
    nodal = tmp_path / "nodal.txt"
    nodal.write_text("vars: x y z\nF1 = y^2*z - x^3 - x^2*z\n")
    code, _, err = run(capsys, "flexweight", "-f", str(nodal), "--point", "0,0,1")
    assert code == 3 and err.startswith("error (oracles):")
    code, _, err = run(capsys, "resultant", "-f", FERMAT)
    assert code == 3


def test_failed_check_exit_code(capsys, monkeypatch):
    import mhessian.oracles

    monkeypatch.setattr(mhessian.oracles, "sylvester_resultant", lambda F0, F1: 7)
    code, out, _ = run(capsys, "resultant", "-f", BINARY)
    assert code == 1 and "DISAGREE" in out


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "mhessian.cli", "mhessian", "-f", FERMAT, "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
