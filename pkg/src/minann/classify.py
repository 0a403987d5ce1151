"""End-to-end classification of a free boundary minimal annulus.

Stages, each certified before the next runs:

1. ``analysis``   conformality and harmonicity residuals
2. ``free_boundary``  boundary on the unit sphere, meeting it orthogonally
3. ``hopf``       constant Hopf quartic, giving ``A = sqrt(value) / 2``
4. ``alignment``  boundary-circle centres antipodal, rotated onto the Z axis
5. ``laurent``    series of ``1/g_z, g^2/g_z, g/g_z``
6. ``fourier``    height constant on both boundary circles
7. ``recover``    ``g = c z^m``
8. ``reconstruct`` closed-form surface vs input, up to rotation about Z and a Z shift
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    SurfaceGrid,
    conformality_residual,
    estimate_hopf_constant,
    harmonicity_residual,
    laplacian,
    wirtinger,
)
from .boundary import FLIP_X, antipodality_check, free_boundary_residual, fit_plane_circle, BoundaryCurve
from .errors import FitError, FlatSurfaceError, InconsistencyError, MinannError
from .spectral import LaurentSeries, fourier_vanishing_check, laurent_extract, recover_gauss_map
from .weierstrass import WeierstrassData, integrate_immersion

VERDICTS = ("critical_catenoid", "not_free_boundary", "not_embeddable", "inconsistent")


@dataclass
class ClassificationReport:
    verdict: str
    failed_stage: str | None = None
    message: str = ""
    m: int | None = None
    c: complex | None = None
    c1: float | None = None
    A: float | None = None
    theta0: float | None = None
    Z0: float | None = None
    distance: float | None = None
    residuals: dict = field(default_factory=dict)

    @property
    def l(self) -> float | None:
        return None if self.c is None else abs(self.c)

    @property
    def beta(self) -> float | None:
        return None if self.c is None else float(np.angle(self.c))

    def as_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "verdict": self.verdict,
            "failed_stage": self.failed_stage,
            "message": self.message,
            "m": self.m,
            "c": None if self.c is None else [float(self.c.real), float(self.c.imag)],
            "l": num(self.l),
            "beta": num(self.beta),
            "c1": num(self.c1),
            "A": num(self.A),
            "theta0": num(self.theta0),
            "Z0": num(self.Z0),
            "distance": num(self.distance),
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
        }


# -- helpers ---------------------------------------------------------------

def rotation_onto_z(axis) -> np.ndarray:
    """Proper rotation taking unit vector ``axis`` to ``(0, 0, 1)``."""
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(a, z)
    c = float(a @ z)
    s = np.linalg.norm(v)
    if s < 1e-15:
        return np.eye(3) if c > 0 else FLIP_X.copy()
    K = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + K + K @ K * ((1 - c) / s**2)


def gauss_map_samples(s: SurfaceGrid) -> np.ndarray:
    """North-pole stereographic projection of the unit normal ``U_r x U_theta``."""
    p = s.partials
    n = np.cross(p.U_r, p.U_theta)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (n[..., 0] + 1j * n[..., 1]) / (1 - n[..., 2])


def gauss_map_series(s: SurfaceGrid) -> tuple[LaurentSeries, float]:
    """Laurent series of the Gauss map from the sampled normals.

    Nonnegative modes are read on an outer row and negative modes on an
    inner row (interior rows for numeric surfaces).  Returns the series and
    its maximum relative misfit against the samples on every row.
    """
    g = gauss_map_samples(s)
    grid = s.grid
    n = grid.n_theta
    jo, ji = (grid.n_r - 1, 0) if s.derivative_mode == "analytic" else (grid.n_r - 2, 1)
    Fo = np.fft.fft(g[jo]) / n
    Fi = np.fft.fft(g[ji]) / n
    ks = np.arange(-n // 2 + 1, n // 2)
    ro, ri = grid.radii[jo], grid.radii[ji]
    scale = max(np.max(np.abs(Fo)), np.max(np.abs(Fi)))
    coeffs = np.where(ks >= 0, Fo[np.mod(ks, n)] * ro ** (-ks.astype(float)), Fi[np.mod(ks, n)] * ri ** (-ks.astype(float)))
    on_row = np.abs(np.where(ks >= 0, Fo[np.mod(ks, n)], Fi[np.mod(ks, n)]))
    coeffs[on_row < 64 * np.finfo(float).eps * scale] = 0.0
    nz = np.nonzero(coeffs)[0]
    if len(nz) == 0:
        series = LaurentSeries(0, [0.0])
    else:
        series = LaurentSeries(int(ks[nz[0]]), coeffs[nz[0]:nz[-1] + 1])
    misfit = float(np.max(np.abs(series(grid.nodes()) - g)) / max(np.max(np.abs(g)), 1e-300))
    return series, misfit


def align_about_z(source: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Best rotation about Z plus Z shift taking ``source`` onto ``target`` (least squares)."""
    ws = source[..., 0] + 1j * source[..., 1]
    wt = target[..., 0] + 1j * target[..., 1]
    corr = np.sum(wt * np.conj(ws))
    angle = float(np.angle(corr)) if abs(corr) > 0 else 0.0
    shift = float(np.mean(target[..., 2] - source[..., 2]))
    w = ws * np.exp(1j * angle)
    out = np.stack([w.real, w.imag, source[..., 2] + shift], axis=-1)
    return out, angle, shift


def _relative_analysis(s: SurfaceGrid) -> tuple[float, float]:
    """Scale-free gates: ``max |U_z.U_z| / |U_z|^2`` and ``max |Delta U| / lambda``.

    For a conformal immersion the second is ``2 |H|`` and does not depend on
    the coordinate factor ``1/r^2`` that weights the inner rim.
    """
    p = s.partials
    r, th = s.grid.mesh()
    U_z, _ = wirtinger(p, r, th)
    n2 = np.sum(np.abs(U_z) ** 2, axis=-1)
    conf = float(np.max(np.abs(np.sum(U_z * U_z, axis=-1)) / n2))
    lam = np.sum(p.U_r**2, axis=-1)[1:-1]
    lap = np.linalg.norm(laplacian(p, r), axis=-1)[1:-1]
    return conf, float(np.max(lap / lam))


# -- pipeline ---------------------------------------------------------------

def classify(
    s: SurfaceGrid,
    d: WeierstrassData | None = None,
    tol: float = 1e-6,
    k_band: int = 16,
) -> ClassificationReport:
    """Run the classification stages; see module docstring."""
    res: dict = {}
    rep = ClassificationReport(verdict="inconsistent", residuals=res)

    def fail(stage, verdict, msg):
        rep.verdict, rep.failed_stage, rep.message = verdict, stage, msg
        return rep

    # 1. analysis
    res["conformality"] = conformality_residual(s)
    res["harmonicity"] = harmonicity_residual(s)
    res["conformality_relative"], res["mean_curvature"] = _relative_analysis(s)
    if res["conformality_relative"] > tol or res["mean_curvature"] > tol:
        return fail("analysis", "inconsistent", "surface is not a conformal harmonic immersion")

    # 2. free boundary
    fb = free_boundary_residual(s)
    res["sphere"] = fb.sphere_residual
    res["orthogonality"] = fb.orthogonality_residual
    if fb.sphere_residual > tol or fb.orthogonality_residual > tol:
        return fail("free_boundary", "not_free_boundary", "boundary does not meet the unit sphere orthogonally")

    # 3. Hopf constant
    value, spread = estimate_hopf_constant(s)
    A = float(np.sqrt(abs(value)) / 2)
    rep.A = A
    res["hopf_spread"] = spread / max(abs(value), 1e-300)
    if A < 1e-12:
        return fail("hopf", "inconsistent", "Hopf quartic vanishes: surface is flat")
    if res["hopf_spread"] > tol:
        return fail("hopf", "inconsistent", "Hopf quartic is not constant")

    # 4. antipodal boundary circles, axis onto Z
    res["antipodality"] = antipodality_check(s)
    try:
        fo = fit_plane_circle(BoundaryCurve.from_surface(s, "outer"))
        fi = fit_plane_circle(BoundaryCurve.from_surface(s, "inner"))
    except FitError as exc:
        return fail("alignment", "inconsistent", str(exc))
    res["planarity"] = max(fo.planarity, fi.planarity)
    res["circularity"] = max(fo.circularity, fi.circularity)
    axis = fo.center - fi.center
    if np.linalg.norm(axis) < 1e-9:
        axis = fo.normal
    Q = rotation_onto_z(axis)
    aligned = s.transformed(rotation=Q)
    if d is None and np.max(np.abs(gauss_map_samples(aligned))) > 10:
        # south-pole chart: a half-turn about X replaces g by 1/g
        Q = FLIP_X @ Q
        aligned = s.transformed(rotation=Q)
    for which, j in (("outer", -1), ("inner", 0)):
        rho2 = np.sum(aligned.values[j, :, :2] ** 2, axis=-1)
        res[f"xy_radius_variation_{which}"] = float(np.ptp(rho2))
    if max(res["antipodality"], res["planarity"], res["circularity"],
           res["xy_radius_variation_outer"], res["xy_radius_variation_inner"]) > tol:
        return fail("alignment", "inconsistent", "boundary circles are not coaxial about the origin")

    # 5. Laurent series of the quotient functions
    spec = s.grid.spec
    band = min(k_band, s.grid.n_theta // 4)
    try:
        if d is not None:
            g_eval, g_deriv = d.g, d.g.derivative
            theta0 = d.theta0
            res["weierstrass_identity"] = 0.0
        else:
            g_series, misfit = gauss_map_series(aligned)
            res["gauss_map_misfit"] = misfit
            if misfit > tol:
                return fail("laurent", "inconsistent", "Gauss map is not holomorphic on the annulus")
            if g_series.max_abs() == 0 or np.all(g_series.coeffs[g_series.ks != 0] == 0):
                raise FlatSurfaceError("constant Gauss map: the surface is flat")
            g_eval, g_deriv = g_series, g_series.derivative
            # e^{i theta0} = 2 f g_z z^2 / A with f = (Phi_1 - i Phi_2) / 2 and Phi = 2 U_z
            r, th = aligned.grid.mesh()
            U_z, _ = wirtinger(aligned.partials, r, th)
            z = aligned.grid.nodes()
            phase = 2 * (U_z[..., 0] - 1j * U_z[..., 1]) * g_deriv(z) * z**2 / A
            theta0 = float(np.angle(np.mean(phase)))
            res["weierstrass_identity"] = float(np.max(np.abs(phase - np.exp(1j * theta0))))
            if res["weierstrass_identity"] > tol:
                return fail("laurent", "inconsistent", "|f g_z z^2| is not the constant A/2")
        rep.theta0 = theta0
        check = tol <= 1e-6
        P = laurent_extract(lambda z: 1 / g_deriv(z), spec, (-band, band), check=check)
        Qs = laurent_extract(lambda z: g_eval(z) ** 2 / g_deriv(z), spec, (-band, band), check=check)
        S = laurent_extract(lambda z: g_eval(z) / g_deriv(z), spec, (-band, band), check=check)
    except FlatSurfaceError as exc:
        return fail("laurent", "inconsistent", str(exc))
    except MinannError as exc:
        return fail("laurent", "inconsistent", str(exc))
    res["laurent_discrepancy"] = max(P.discrepancy / max(P.max_abs(), 1e-300),
                                     Qs.discrepancy / max(Qs.max_abs(), 1e-300),
                                     S.discrepancy / max(S.max_abs(), 1e-300))
    res["reality_a1_b1"] = abs(np.conj(P.coefficient(1)) + Qs.coefficient(1))
    res["reality_c1"] = abs(S.coefficient(1).imag)
    c1 = float(S.coefficient(1).real)
    rep.c1 = c1

    # 6. Fourier vanishing of the height on both circles
    c1_eff = float((np.exp(1j * theta0) * S.coefficient(1)).real)
    fv = fourier_vanishing_check(aligned.values[-1, :, 2], aligned.values[0, :, 2], A, c1_eff, spec.outer_radius)
    res["fourier_max_mode"] = fv.max_mode
    res["fourier_gap"] = fv.gap_residual
    if fv.max_mode > tol or fv.gap_residual > tol * max(1.0, abs(fv.gap)):
        return fail("fourier", "inconsistent", "height is not constant on the boundary circles")

    # 7. g = c z^m
    try:
        gm = recover_gauss_map(S, g_eval, 1.0, off_mode_tol=max(tol, 1e-8), integrality_tol=max(tol, 1e-6))
    except FlatSurfaceError as exc:
        return fail("recover", "inconsistent", str(exc))
    except InconsistencyError as exc:
        return fail("recover", "inconsistent", str(exc))
    rep.m, rep.c = gm.m, gm.c
    res["off_mode_energy"] = gm.off_mode_energy
    res["integrality_defect"] = gm.integrality_defect

    # 8. reconstruct and compare
    try:
        rec = integrate_immersion(WeierstrassData.monomial(gm.c, gm.m, A, theta0), s.grid, period_tol=max(tol, 1e-9)).values
    except MinannError as exc:
        return fail("reconstruct", "inconsistent", str(exc))
    moved, _, shift = align_about_z(rec, aligned.values)
    rep.Z0 = shift
    rep.distance = float(np.max(np.linalg.norm(moved - aligned.values, axis=-1)))
    res["distance"] = rep.distance
    if not gm.embeddable:
        return fail("recover", "not_embeddable", f"|m| = {abs(gm.m)} >= 2: the annulus is not embedded")
    if rep.distance > tol:
        return fail("reconstruct", "inconsistent", "reconstructed catenoid does not match the surface")
    rep.verdict = "critical_catenoid"
    return rep
