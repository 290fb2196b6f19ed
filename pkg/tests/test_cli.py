import json
import subprocess
import sys
from pathlib import Path

import pytest

from circlebundle import cli

DATA = Path(__file__).resolve().parent.parent / "data"


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = cli.main([*argv, "--output", str(out)])
    return code, json.loads(out.read_text())


def test_check_pass(tmp_path):
    code, rep = run(tmp_path, "check", "--input", str(DATA / "x0_ix.json"))
    assert code == 0 and rep["status"] == "pass" and rep["command"] == "check"
    assert rep["payload"]["lambda"] == {}
    assert rep["payload"]["mu"] == {"x0^2": "1/1"}


def test_check_fail_reports_remainders(tmp_path):
    code, rep = run(tmp_path, "check", "--input", str(DATA / "violation.json"))
    assert code == 1 and rep["status"] == "fail"
    assert rep["payload"]["remainders"]["gamma_x"] == {"x1^3": "-1/1", "x1*x2^2": "-1/1", "x1*x3^2": "-1/1"}


@pytest.mark.parametrize("name,family", [("x0_ix.json", "left"), ("x_x0i.json", "right"), ("common_point.json", "both")])
def test_family(tmp_path, name, family):
    code, rep = run(tmp_path, "family", "--input", str(DATA / name))
    assert code == 0 and rep["payload"] == {"family": family}


def test_family_none(tmp_path):
    code, rep = run(tmp_path, "family", "--input", str(DATA / "violation.json"))
    assert code == 1 and "remainders" in rep["diagnostics"]


def test_canonicalize_and_common_point(tmp_path):
    code, rep = run(tmp_path, "canonicalize", "--input", str(DATA / "common_point.json"))
    assert code == 0 and rep["payload"]["lambda"] == {"x0": "2/1"}
    code, rep = run(tmp_path, "common-point", "--input", str(DATA / "common_point.json"))
    assert rep["payload"]["common_point"] == ["1/2", "0/1", "0/1", "0/1"]
    code, rep = run(tmp_path, "common-point", "--input", str(DATA / "x0_ix.json"))
    assert rep["payload"]["common_point"] is None


def test_decompose_centers_fit_round_trip(tmp_path):
    for name, side in (("x0_ix.json", "left"), ("x_x0i.json", "right")):
        code, dec = run(tmp_path, "decompose", "--input", str(DATA / name))
        assert code == 0 and dec["payload"]["side"] == side
        assert len(dec["payload"]["lines"]) == 3
        (tmp_path / "dec.json").write_text(json.dumps(dec))
        code, cen = run(tmp_path, "centers", "--input", str(tmp_path / "dec.json"), "--backend", "exact")
        assert code == 0
        (tmp_path / "cen.json").write_text(json.dumps(cen))
        code, fit = run(tmp_path, "fit", "--input", str(tmp_path / "cen.json"), "--backend", "exact")
        assert code == 0
        assert fit["payload"]["descriptor"] == dec["payload"]["descriptor"]
        assert fit["payload"]["descriptor"]["side"] == side


def test_lines_and_combine(tmp_path):
    code, dec = run(tmp_path, "decompose", "--input", str(DATA / "x0_ix.json"))
    (tmp_path / "d1.json").write_text(json.dumps(dec))
    code, rep = run(tmp_path, "lines", "--input", str(tmp_path / "d1.json"))
    assert code == 0 and rep["payload"]["dimension"] == 3
    code, rep = run(tmp_path, "combine", "--input", str(tmp_path / "d1.json"), "--input", str(tmp_path / "d1.json"),
                    "--weight", "1/3")
    assert code == 0 and rep["payload"]["descriptor"] == dec["payload"]["descriptor"]
    code, rep = run(tmp_path, "combine", "--input", str(tmp_path / "d1.json"))
    assert code == 2


def test_combine_orientation_mismatch(tmp_path):
    _, left = run(tmp_path, "decompose", "--input", str(DATA / "x0_ix.json"))
    _, right = run(tmp_path, "decompose", "--input", str(DATA / "x_x0i.json"))
    (tmp_path / "l.json").write_text(json.dumps(left))
    (tmp_path / "r.json").write_text(json.dumps(right))
    code, rep = run(tmp_path, "combine", "--input", str(tmp_path / "l.json"), "--input", str(tmp_path / "r.json"))
    assert code == 2 and rep["diagnostics"]["type"] == "OrientationMismatch"


def test_synthesize(tmp_path):
    code, rep = run(tmp_path, "synthesize", "--input", str(DATA / "common_point.json"))
    assert code == 0
    assert rep["payload"]["a"] == ["-1/2", "0/1", "0/1", "0/1"]
    assert rep["payload"]["lambda"] == {"x0": "2/1"}


@pytest.mark.parametrize("name", ["qft_x0i.json", "complex_projective.json", "x0_ix.json"])
def test_verify(tmp_path, name):
    code, rep = run(tmp_path, "verify", "--input", str(DATA / name), "--directions", "8")
    assert code == 0 and rep["payload"]["passed"] is True
    assert len(rep["payload"]["lines"]) == 8


def test_verify_beyond_certified_radius_warns(tmp_path):
    code, rep = run(tmp_path, "verify", "--input", str(DATA / "x0_ix.json"), "--radius", "0.6", "--directions", "4")
    assert "warning" in rep["diagnostics"]


def test_determinism(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for target in (a, b):
        cli.main(["verify", "--input", str(DATA / "qft_x0i.json"), "--seed", "7", "--output", str(target)])
    assert a.read_bytes() == b.read_bytes()
    for target in (a, b):
        cli.main(["decompose", "--input", str(DATA / "x0_ix.json"), "--seed", "3", "--output", str(target)])
    assert a.read_bytes() == b.read_bytes()


def test_malformed_input_names_field(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "matrices": [[["0/1", "x"], ["0/1", "0/1"]]] * 2}))
    code, rep = run(tmp_path, "check", "--input", str(bad))
    assert code == 2 and rep["status"] == "error"
    assert "matrices[0][0][1]" in rep["diagnostics"]["error"]
    bad.write_text("{not json")
    code, rep = run(tmp_path, "check", "--input", str(bad))
    assert code == 2
    code, rep = run(tmp_path, "check", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_float_backend_rejected_for_exact_commands(tmp_path):
    code, rep = run(tmp_path, "check", "--input", str(DATA / "x0_ix.json"), "--backend", "float")
    assert code == 2 and rep["diagnostics"]["type"] == "UnsupportedBackend"


def test_module_entry_point_and_stdout():
    proc = subprocess.run([sys.executable, "-m", "circlebundle", "family", "--input", str(DATA / "x0_ix.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"] == {"family": "left"}
    assert proc.stderr.strip() == "family: pass"
