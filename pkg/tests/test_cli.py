import json
import subprocess
import sys

import numpy as np
import pytest

from minann.catenoid import catenoid_surface
from minann.cli import main
from minann.io import save_data, save_surface
from minann.weierstrass import WeierstrassData

from conftest import flat_annulus


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, params):
    cat = tmp_path / "catenoid.json"
    save_surface(catenoid_surface(params, 32, 128), cat)
    flat = tmp_path / "flat.json"
    save_surface(flat_annulus(), flat)
    data = tmp_path / "gz.json"
    save_data(WeierstrassData.monomial(1.0, 1, params.a), data)
    return {"cat": cat, "flat": flat, "data": data, "dir": tmp_path}


def test_catenoid_params(capsys, params):
    code, out, _ = run(["catenoid-params"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"t", "r2", "a", "A", "residual"}
    assert rep["t"] == params.t


def test_verify_catenoid(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MINANN_THREADS", "2")
    out_path = tmp_path / "rep.json"
    code, out, _ = run(["verify-catenoid", "--nr", 64, "--ntheta", 256, "--out", out_path], capsys)
    assert code == 0
    rep = json.loads(out_path.read_text())
    assert out == out_path.read_text()
    assert rep["passed"]
    for k in ("conformality", "harmonicity", "hopf_constancy", "gauss_residual", "minimality"):
        assert rep["analysis"][k] < 1e-8
    assert rep["spectral"]["verdict"] == "critical_catenoid"


def test_verify_catenoid_bad_threads(capsys, monkeypatch):
    monkeypatch.setenv("MINANN_THREADS", "lots")
    code, _, err = run(["verify-catenoid", "--nr", 16, "--ntheta", 64], capsys)
    assert code == 2 and "MINANN_THREADS" in err


def test_verify_catenoid_bad_grid(capsys):
    code, _, err = run(["verify-catenoid", "--nr", 16, "--ntheta", 60], capsys)
    assert code == 2 and "n_theta" in err


def test_analyze(capsys, files):
    code, out, _ = run(["analyze", "--surface", files["cat"]], capsys)
    assert code == 0
    rep = json.loads(out)
    assert {"conformality", "harmonicity", "hopf_constancy", "hopf_value", "gauss_residual", "minimality"} <= set(rep)
    assert len(rep["hopf_value"]) == 2


def test_analyze_flat(capsys, files):
    out_path = files["dir"] / "flat_rep.json"
    code, out, _ = run(["analyze", "--surface", files["flat"], "--out", out_path], capsys)
    assert code == 1
    rep = json.loads(out_path.read_text())
    assert rep["passed"]["conformality"]
    assert not rep["passed"]["sphere_residual"]


def test_classify(capsys, files):
    out_path = files["dir"] / "report.json"
    code, _, _ = run(["classify", "--surface", files["cat"], "--tol", "1e-6", "--out", out_path], capsys)
    assert code == 0
    assert json.loads(out_path.read_text())["verdict"] == "critical_catenoid"
    code, out, _ = run(["classify", "--surface", files["flat"]], capsys)
    assert code == 1
    assert json.loads(out)["verdict"] == "not_free_boundary"


def test_boundary_report(capsys, files):
    csv_path = files["dir"] / "tau.csv"
    code, out, _ = run(["boundary-report", "--surface", files["cat"], "--csv", csv_path], capsys)
    assert code == 0
    rep = json.loads(out)
    assert set(rep["relations"]) == {"res5", "res8", "res10", "res_reality"}
    assert rep["outer_fit"]["radius"] == pytest.approx(0.8335565596, abs=1e-8)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "theta,tau_outer,tau_inner" and len(lines) == 129
    code, out, _ = run(["boundary-report", "--surface", files["cat"], "--data", files["data"]], capsys)
    assert code == 0


def test_weierstrass_integrate(capsys, files, params):
    out_path = files["dir"] / "w.json"
    code, out, _ = run(
        ["weierstrass-integrate", "--data", files["data"], "--R", repr(params.r2), "--nr", 16, "--ntheta", 64,
         "--out", out_path, "--emit-mesh", files["dir"] / "mesh"],
        capsys,
    )
    assert code == 0 and json.loads(out)["representable"]
    surf = json.loads(out_path.read_text())
    assert (surf["n_r"], surf["n_theta"]) == (16, 64)
    assert (files["dir"] / "mesh.obj").exists() and (files["dir"] / "mesh.csv").exists()


def test_weierstrass_integrate_not_representable(capsys, files):
    data = files["dir"] / "bad.json"
    data.write_text(json.dumps({"A": 1.0, "theta0": 0.0, "g": {"kind": "laurent", "k_min": 0, "coeffs": [[0.3, 0], [1, 0]]}}))
    code, out, _ = run(["weierstrass-integrate", "--data", data, "--R", 2, "--out", files["dir"] / "x.json"], capsys)
    assert code == 1
    assert not json.loads(out)["representable"]
    assert not (files["dir"] / "x.json").exists()


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["analyze", "--surface", "missing.json"], "cannot read"),
        (["classify", "--surface", "{flat}", "--data", "missing.json"], "cannot read"),
        (["analyze", "--surface", "{flat}", "--out", "no/such/dir/r.json"], "output directory"),
    ],
)
def test_input_errors(capsys, files, argv, needle):
    argv = [a.replace("{flat}", str(files["flat"])) for a in argv]
    code, _, err = run(argv, capsys)
    assert code == 2 and needle in err


def test_dimension_mismatch(capsys, files):
    obj = json.loads(files["cat"].read_text())
    obj["n_r"] = 31
    bad = files["dir"] / "short.json"
    bad.write_text(json.dumps(obj))
    code, _, err = run(["analyze", "--surface", bad], capsys)
    assert code == 2 and "'values'" in err


def test_bad_tolerance_rejected(files):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--surface", str(files["cat"]), "--tol", "-1"])
    assert exc.value.code == 2


def test_byte_identical_reports(files):
    cmd = [sys.executable, "-m", "minann", "classify", "--surface", str(files["cat"])]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"critical_catenoid" in a
