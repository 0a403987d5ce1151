"""Command-line front end: ``minann <command> [options]``.

Exit status: 0 when every residual is within tolerance, 1 when the
mathematics fails (the JSON report is still written), 2 on input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .analysis import (
    conformality_residual,
    estimate_hopf_constant,
    gauss_equation_residual,
    harmonicity_residual,
    minimality_residual,
)
from .boundary import (
    BoundaryCurve,
    antipodality_check,
    boundary_relations_residual,
    fit_plane_circle,
    free_boundary_residual,
    local_expansion,
    torsion_profile,
)
from .catenoid import catenoid_forms, catenoid_surface, solve_catenoid_params
from .classify import classify, gauss_map_series
from .domain import AnnulusSpec, make_grid
from .errors import FormatError, MinannError, ParameterError
from .io import dumps, emit_plot_data, load_data, load_surface, save_surface
from .spectral import laurent_extract
from .weierstrass import WeierstrassData, integrate_immersion, periods

FILE_RADIAL_ORDER = 8  # surfaces read from disk are sampled; use the high-order stencil


class InputError(MinannError):
    pass


# -- reports ---------------------------------------------------------------

def analysis_report(s, tol: float = 1e-6) -> dict:
    hopf, spread = estimate_hopf_constant(s)
    A = float(np.sqrt(abs(hopf)) / 2)
    fb = free_boundary_residual(s)
    rep = {
        "conformality": conformality_residual(s),
        "harmonicity": harmonicity_residual(s),
        "hopf_constancy": spread,
        "hopf_value": [hopf.real, hopf.imag],
        "gauss_residual": gauss_equation_residual(s, A),
        "minimality": minimality_residual(s),
        "sphere_residual": fb.sphere_residual,
        "orthogonality_residual": fb.orthogonality_residual,
    }
    checks = ("conformality", "harmonicity", "hopf_constancy", "gauss_residual",
              "minimality", "sphere_residual", "orthogonality_residual")
    rep["passed"] = {k: bool(rep[k] < tol) for k in checks}
    rep["tol"] = tol
    return rep


def _relations(s, d: WeierstrassData | None) -> dict:
    if d is None:
        series, _ = gauss_map_series(s)
        hopf, _ = estimate_hopf_constant(s)
        d = WeierstrassData(series, float(np.sqrt(abs(hopf)) / 2), float(np.angle(hopf) / 2))
    e = local_expansion(d, np.log(s.grid.R), R=s.grid.R)
    rel = boundary_relations_residual(e, d.A, d.theta0)
    return rel.as_dict()


def boundary_report(s, d: WeierstrassData | None = None, tol: float = 1e-6) -> tuple[dict, dict]:
    fb = free_boundary_residual(s)
    curves = {w: BoundaryCurve.from_surface(s, w) for w in ("outer", "inner")}
    tors = {w: torsion_profile(c) for w, c in curves.items()}
    fits = {w: fit_plane_circle(c) for w, c in curves.items()}
    rep = {
        "sphere_residual": fb.sphere_residual,
        "orthogonality_residual": fb.orthogonality_residual,
        "torsion_max_outer": tors["outer"].max_abs,
        "torsion_max_inner": tors["inner"].max_abs,
        "outer_fit": fits["outer"].as_dict(),
        "inner_fit": fits["inner"].as_dict(),
        "antipodality": antipodality_check(s),
        "relations": None,
    }
    try:
        rep["relations"] = _relations(s, d)
    except MinannError as exc:
        rep["relations_error"] = str(exc)
    values = [rep["sphere_residual"], rep["orthogonality_residual"], rep["torsion_max_outer"],
              rep["torsion_max_inner"], rep["antipodality"]]
    for f in fits.values():
        values += [f.planarity, f.circularity]
    if rep["relations"] is not None:
        values += list(rep["relations"].values())
    rep["tol"] = tol
    rep["passed"] = bool(rep["relations"] is not None and all(np.isfinite(v) and v < tol for v in values))
    return rep, tors


def verify_catenoid_report(n_r: int, n_theta: int, tol: float = 1e-8, threads: int = 0) -> dict:
    p = solve_catenoid_params()
    s = catenoid_surface(p, n_r, n_theta)
    d = WeierstrassData.monomial(-1.0, 1, p.A)

    def forms_suite():
        from .analysis import forms
        f = forms(s)
        ex = catenoid_forms(p, s.grid.mesh()[0])
        return {"forms_error": max(float(np.max(np.abs(getattr(f, k) - getattr(ex, k)))) for k in "LMN")}

    def spectral_suite():
        rep = classify(s, tol=tol)
        ser = laurent_extract(d.g, p.spec, (-4, 4))
        return {
            "verdict": rep.verdict,
            "distance": rep.distance,
            "m": rep.m,
            "l": rep.l,
            "laurent_error": abs(ser.coefficient(1) + 1) + float(np.max(np.abs(ser.coeffs[ser.ks != 1]))),
            "period_real_max": float(np.max(np.abs(periods(d).real_parts))),
        }

    suites = {
        "analysis": lambda: analysis_report(s, tol),
        "forms": forms_suite,
        "boundary": lambda: boundary_report(s, d, tol)[0],
        "spectral": spectral_suite,
    }
    workers = threads if threads > 0 else min(len(suites), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futures = {k: ex.submit(fn) for k, fn in suites.items()}
        out = {k: fut.result() for k, fut in futures.items()}
    hopf = out["analysis"]["hopf_value"]
    out["params"] = p.as_dict()
    out["hopf_vs_4a2"] = abs(complex(*hopf) - 4 * p.a**2)
    out["grid"] = {"n_r": n_r, "n_theta": n_theta}
    out["tol"] = tol
    spec_ok = (out["spectral"]["verdict"] == "critical_catenoid"
               and out["spectral"]["distance"] < tol
               and out["spectral"]["laurent_error"] < tol
               and out["spectral"]["period_real_max"] < tol)
    out["passed"] = bool(all(out["analysis"]["passed"].values()) and out["forms"]["forms_error"] < tol
                         and out["boundary"]["passed"] and spec_ok and out["hopf_vs_4a2"] < tol)
    return out


# -- argument handling -----------------------------------------------------

def _positive(kind):
    def parse(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a {kind.__name__}, got {text!r}")
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return v
    return parse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minann", description="Free boundary minimal annuli toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, tol):
        p.add_argument("--tol", type=_positive(float), default=tol)
        p.add_argument("--out", type=Path, help="write the JSON report (or surface) here")

    p = sub.add_parser("catenoid-params", help="solve t tanh t = 1")
    common(p, 1e-13)

    p = sub.add_parser("verify-catenoid", help="end-to-end checks on the analytic catenoid")
    common(p, 1e-8)
    p.add_argument("--nr", type=_positive(int), default=64)
    p.add_argument("--ntheta", type=_positive(int), default=256)
    p.add_argument("--emit-mesh", type=Path, metavar="PREFIX")

    p = sub.add_parser("weierstrass-integrate", help="integrate Weierstrass data into a surface file")
    common(p, 1e-9)
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--R", type=_positive(float), required=True)
    p.add_argument("--nr", type=_positive(int), default=32)
    p.add_argument("--ntheta", type=_positive(int), default=128)
    p.add_argument("--emit-mesh", type=Path, metavar="PREFIX")

    for name, help_ in (("analyze", "residuals of a sampled surface"),
                        ("boundary-report", "boundary curve diagnostics"),
                        ("classify", "classification verdict")):
        p = sub.add_parser(name, help=help_)
        common(p, 1e-6)
        p.add_argument("--surface", type=Path, required=True)
        p.add_argument("--order", type=int, choices=(2, 4, 6, 8), default=FILE_RADIAL_ORDER,
                       help="radial finite-difference order")
        p.add_argument("--emit-mesh", type=Path, metavar="PREFIX")
        if name != "analyze":
            p.add_argument("--data", type=Path)
        if name == "boundary-report":
            p.add_argument("--csv", type=Path, help="per-theta torsion profiles")
    return ap


def _threads() -> int:
    text = os.environ.get("MINANN_THREADS", "0")
    try:
        n = int(text)
    except ValueError:
        raise InputError(f"MINANN_THREADS must be a non-negative integer, got {text!r}")
    if n < 0:
        raise InputError(f"MINANN_THREADS must be a non-negative integer, got {text!r}")
    return n


def _check_output(path):
    if path is not None and not Path(path).parent.exists():
        raise InputError(f"output directory does not exist: {Path(path).parent}")


def _emit(report: dict, out) -> None:
    text = dumps(report)
    if out is not None:
        Path(out).write_text(text)
    sys.stdout.write(text)


def run(args) -> int:
    threads = _threads()
    for name in ("out", "emit_mesh", "csv"):
        _check_output(getattr(args, name, None))

    if args.command == "catenoid-params":
        p = solve_catenoid_params(min(args.tol, 1e-7))
        _emit(p.as_dict(), args.out)
        return 0

    if args.command == "verify-catenoid":
        try:
            make_grid(AnnulusSpec(2.0), args.nr, args.ntheta)
        except MinannError as exc:
            raise InputError(str(exc))
        rep = verify_catenoid_report(args.nr, args.ntheta, args.tol, threads)
        if args.emit_mesh:
            emit_plot_data(catenoid_surface(solve_catenoid_params(), args.nr, args.ntheta), args.emit_mesh)
        _emit(rep, args.out)
        return 0 if rep["passed"] else 1

    if args.command == "weierstrass-integrate":
        d = load_data(args.data)
        try:
            grid = make_grid(AnnulusSpec(args.R), args.nr, args.ntheta)
        except MinannError as exc:
            raise InputError(str(exc))
        pr = periods(d, tol=args.tol, rho=grid.spec.core_radius)
        rep = {
            "periods": [[v.real, v.imag] for v in pr.values],
            "period_error_estimate": pr.error_estimate.tolist(),
            "representable": pr.representable,
            "R": args.R,
            "n_r": args.nr,
            "n_theta": args.ntheta,
            "tol": args.tol,
        }
        if pr.representable:
            s = integrate_immersion(d, grid, period_tol=args.tol)
            if args.out is not None:
                save_surface(s, args.out)
            if args.emit_mesh:
                emit_plot_data(s, args.emit_mesh)
        sys.stdout.write(dumps(rep))
        return 0 if pr.representable else 1

    s = load_surface(args.surface, radial_order=args.order)
    d = load_data(args.data) if getattr(args, "data", None) else None
    if args.emit_mesh:
        emit_plot_data(s, args.emit_mesh)

    if args.command == "analyze":
        rep = analysis_report(s, args.tol)
        _emit(rep, args.out)
        return 0 if all(rep["passed"].values()) else 1

    if args.command == "boundary-report":
        rep, tors = boundary_report(s, d, args.tol)
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("theta,tau_outer,tau_inner\n")
                for th, to, ti in zip(tors["outer"].theta, tors["outer"].tau, tors["inner"].tau):
                    fh.write(f"{float(th)!r},{float(to)!r},{float(ti)!r}\n")
        _emit(rep, args.out)
        return 0 if rep["passed"] else 1

    rep = classify(s, d, tol=args.tol)
    _emit(rep.as_dict(), args.out)
    return 0 if rep.verdict == "critical_catenoid" else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (InputError, FormatError, ParameterError) as exc:
        sys.stderr.write(f"minann: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
