"""Boundary-curve analysis: free-boundary residuals, torsion, plane/circle fits,
antipodality of the boundary circles and the local boundary expansion
relations of the Gauss map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import SurfaceGrid, spectral_theta_derivative
from .errors import DegeneracyError, FitError, NormalizationError, ParameterError
from .weierstrass import WeierstrassData


@dataclass(frozen=True)
class BoundaryCurve:
    """Periodic space curve sampled at ``theta``, with derivatives in ``theta``."""

    theta: np.ndarray
    U: np.ndarray
    U_theta: np.ndarray
    U_thetatheta: np.ndarray
    U_thetathetatheta: np.ndarray
    U_r: np.ndarray | None = None
    which: str | None = None

    def __post_init__(self):
        n = len(self.theta)
        for name in ("U", "U_theta", "U_thetatheta", "U_thetathetatheta"):
            if np.shape(getattr(self, name)) != (n, 3):
                raise ParameterError(f"{name} must have shape ({n}, 3)")

    @classmethod
    def from_samples(cls, theta, U, U_r=None, which=None) -> "BoundaryCurve":
        """Spectral derivatives of samples on a uniform periodic ``theta`` grid."""
        U = np.asarray(U, dtype=float)
        d = [spectral_theta_derivative(U, k, axis=0) for k in (1, 2, 3)]
        return cls(np.asarray(theta, dtype=float), U, *d, U_r=U_r, which=which)

    @classmethod
    def from_surface(cls, s: SurfaceGrid, which: str = "outer") -> "BoundaryCurve":
        if which not in ("outer", "inner"):
            raise ParameterError(f"which must be 'outer' or 'inner', got {which!r}")
        j = -1 if which == "outer" else 0
        return cls.from_samples(s.grid.theta, s.values[j], s.partials.U_r[j], which)


# -- free boundary ---------------------------------------------------------

@dataclass(frozen=True)
class FreeBoundaryResidual:
    sphere_residual: float
    orthogonality_residual: float
    outer: tuple[float, float]
    inner: tuple[float, float]


def _rim_residuals(U, U_r):
    nU = np.linalg.norm(U, axis=-1)
    nUr = np.linalg.norm(U_r, axis=-1)
    if np.any(nU < 1e-14) or np.any(nUr < 1e-14):
        raise DegeneracyError("|U| or |U_r| vanishes on the boundary")
    sphere = float(np.max(np.abs(nU - 1.0)))
    orth = float(np.max(np.linalg.norm(np.cross(U_r, U), axis=-1) / (nU * nUr)))
    return sphere, orth


def free_boundary_residual(s: SurfaceGrid) -> FreeBoundaryResidual:
    """``max ||U| - 1|`` and ``max sin angle(U_r, U)`` over both boundary rows."""
    p = s.partials
    outer = _rim_residuals(p.U[-1], p.U_r[-1])
    inner = _rim_residuals(p.U[0], p.U_r[0])
    return FreeBoundaryResidual(
        max(outer[0], inner[0]), max(outer[1], inner[1]), outer, inner
    )


# -- torsion ----------------------------------------------------------------

@dataclass(frozen=True)
class TorsionProfile:
    theta: np.ndarray
    tau: np.ndarray
    flagged: np.ndarray

    @property
    def max_abs(self) -> float:
        ok = ~self.flagged
        return float(np.max(np.abs(self.tau[ok]))) if np.any(ok) else float("nan")


def torsion_profile(c: BoundaryCurve, straight_tol: float = 1e-12) -> TorsionProfile:
    """``tau = det(U', U'', U''') / |U' x U''|^2`` per sample.

    Samples with ``|U' x U''| < straight_tol`` are locally straight; they are
    flagged, set to NaN and left out of :attr:`TorsionProfile.max_abs`.
    """
    cross = np.cross(c.U_theta, c.U_thetatheta)
    norm2 = np.sum(cross**2, axis=-1)
    flagged = np.sqrt(norm2) < straight_tol
    det = np.sum(cross * c.U_thetathetatheta, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = np.where(flagged, np.nan, det / norm2)
    return TorsionProfile(c.theta, tau, flagged)


# -- plane / circle fit -----------------------------------------------------

@dataclass(frozen=True)
class CircleFit:
    center: np.ndarray
    radius: float
    normal: np.ndarray
    planarity: float
    circularity: float

    def as_dict(self) -> dict:
        return {
            "center": [float(x) for x in self.center],
            "radius": float(self.radius),
            "normal": [float(x) for x in self.normal],
            "planarity": float(self.planarity),
            "circularity": float(self.circularity),
        }


def fit_plane_circle(c) -> CircleFit:
    """Total-least-squares plane, then an algebraic circle fit in that plane."""
    P = np.asarray(c.U if isinstance(c, BoundaryCurve) else c, dtype=float)
    if P.ndim != 2 or P.shape[1] != 3 or len(P) < 8:
        raise ParameterError("need at least 8 points in 3-space")
    centroid = P.mean(axis=0)
    X = P - centroid
    evals, evecs = np.linalg.eigh(X.T @ X / len(P))
    if evals[2] <= 0 or evals[1] <= 1e-12 * evals[2]:
        raise FitError("samples are collinear: plane undetermined")
    normal = evecs[:, 0]
    if normal[np.argmax(np.abs(normal))] < 0:
        normal = -normal
    e1 = evecs[:, 2]
    e2 = np.cross(normal, e1)
    x, y = X @ e1, X @ e2
    M = np.column_stack([2 * x, 2 * y, np.ones_like(x)])
    (cx, cy, k), *_ = np.linalg.lstsq(M, x**2 + y**2, rcond=None)
    radius = float(np.sqrt(k + cx**2 + cy**2))
    center = centroid + cx * e1 + cy * e2
    planarity = float(np.max(np.abs(X @ normal)))
    circularity = float(np.max(np.abs(np.hypot(x - cx, y - cy) - radius)))
    return CircleFit(center, radius, normal, planarity, circularity)


# -- antipodality -----------------------------------------------------------

def boundary_moments(s: SurfaceGrid) -> dict:
    """``oint U ds`` and length of each boundary circle, ``ds = sqrt(lambda) r dtheta``."""
    p = s.partials
    dth = 2 * np.pi / s.grid.n_theta
    out = {}
    for which, j in (("outer", -1), ("inner", 0)):
        ds = np.linalg.norm(p.U_r[j], axis=-1) * s.grid.radii[j] * dth
        out[which] = (np.sum(p.U[j] * ds[:, None], axis=0), float(np.sum(ds)))
    return out


def antipodality_check(s: SurfaceGrid) -> float:
    """``|oint_outer U ds + oint_inner U ds|``."""
    m = boundary_moments(s)
    return float(np.linalg.norm(m["outer"][0] + m["inner"][0]))


# -- rotations -------------------------------------------------------------

def rotation_z(alpha: float) -> np.ndarray:
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


FLIP_X = np.diag([1.0, -1.0, -1.0])  # rotation by pi about the X axis; g -> 1/g


# -- local expansion --------------------------------------------------------

@dataclass(frozen=True)
class LocalExpansion:
    """Taylor coefficients ``a_0..a_4`` of ``g(e^w)`` at ``w0`` in the normalized frame.

    ``rotation`` maps the original ambient frame to the normalized one
    (``g(z0)`` real and equal to ``R``); ``inverted`` records whether the
    rotation includes the half-turn that replaces ``g`` by ``1/g``;
    ``tangent_alignment`` is ``|t_Y| / |t|`` for the boundary tangent ``t``
    in the normalized frame (1 when the tangent lies along ``e_Y``).
    """

    w0: complex
    R: float
    a: np.ndarray
    rotation: np.ndarray
    inverted: bool
    tangent_alignment: float

    @property
    def a1(self) -> complex:
        return complex(self.a[1])

    @property
    def a2(self) -> complex:
        return complex(self.a[2])

    @property
    def a3(self) -> complex:
        return complex(self.a[3])

    @property
    def a4(self) -> complex:
        return complex(self.a[4])

    @property
    def Psi(self) -> complex:
        return 4 * self.a2**2 / self.a1**2 - 3 * self.a3 / self.a1


def local_expansion(d: WeierstrassData, w0: complex, delta: float = 0.1, n: int = 64, R: float | None = None) -> LocalExpansion:
    """Expand the normalized Gauss map around the boundary point ``z0 = exp(w0)``.

    The ambient frame is rotated (about Z, optionally after a half-turn
    about X) so that ``g(z0) = R``.  Coefficients come from Cauchy integrals
    on ``|w - w0| = min(delta, 0.1)``.
    """
    w0 = complex(w0)
    z0 = np.exp(w0)
    if R is None:
        R = float(max(abs(z0), 1 / abs(z0)))
    g0 = complex(d.g(z0))
    if abs(abs(g0) - R) <= 1e-8 * R:
        inverted, G0 = False, g0
    elif abs(g0) > 0 and abs(1 / abs(g0) - R) <= 1e-8 * R:
        inverted, G0 = True, 1 / g0
    else:
        raise NormalizationError(f"|g(z0)| = {abs(g0):.6g}: neither it nor its inverse equals R = {R:.6g}")
    alpha = -np.angle(G0)
    Q = rotation_z(alpha) @ (FLIP_X if inverted else np.eye(3))

    def G(w):
        gv = d.g(np.exp(w))
        return np.exp(1j * alpha) * (1 / gv if inverted else gv)

    rho = min(delta, 0.1)
    phi = 2 * np.pi * np.arange(n) / n
    F = np.fft.fft(G(w0 + rho * np.exp(1j * phi))) / n
    a = F[:5] / rho ** np.arange(5)
    if abs(a[1]) < 1e-14:
        raise NormalizationError("a_1 vanishes at the base point")

    Phi = d.integrands(z0)
    tangent = Q @ np.real(1j * z0 * Phi)
    alignment = float(abs(tangent[1]) / np.linalg.norm(tangent))
    return LocalExpansion(w0, R, a, Q, inverted, alignment)


@dataclass(frozen=True)
class RelationResiduals:
    res5: float
    res8: float
    res10: float
    res_reality: float
    A_from_relation: float

    def as_dict(self) -> dict:
        return {
            "res5": self.res5,
            "res8": self.res8,
            "res10": self.res10,
            "res_reality": self.res_reality,
        }


def boundary_relations_residual(e: LocalExpansion, A: float, theta0: float = 0.0) -> RelationResiduals:
    """Residuals of the boundary relations linking ``A e^{i theta0} / a_1`` to ``a_1, a_2``.

    ``res10`` is the larger of the two combined relations
    ``a2/a1 + conj = (a1 + conj a1)/(2R)`` and
    ``A e^{i theta0}/a1 = (R^2 - 1)(a1 + conj a1) / (R (1 + R^2)^2)``.
    """
    R = e.R
    a1, a2 = e.a1, e.a2
    K = A * np.exp(1j * theta0) / a1
    S = a2 / a1 + np.conj(a2 / a1)
    T = a1 + np.conj(a1)
    res5 = abs(K + 2 / (1 + R**2) ** 2 * (S * (1 + R**2) - R * T))
    res8 = abs(K + 2 / (1 + R**2) ** 3 * (S * (1 + R**4) - R**3 * T))
    lin = (R**2 - 1) / (R * (1 + R**2) ** 2) * T
    res10 = max(abs(S - T / (2 * R)), abs(K - lin))
    reality = abs(a1.imag) + abs(a2.imag) + abs(e.Psi.imag)
    A_rel = float((a1 * lin * np.exp(-1j * theta0)).real)
    return RelationResiduals(float(res5), float(res8), float(res10), float(reality), A_rel)


def third_derivative_check(s: SurfaceGrid, which: str = "outer") -> tuple[np.ndarray, np.ndarray]:
    """``(X_ththth, Z_ththth)`` at every boundary node in its normalized frame.

    At each node the frame has ``e_Y`` along the tangent and places the
    position at ``((1 - R^2), 0, 2R) / (1 + R^2)``; the two returned
    components are those of ``U_ththth`` orthogonal to the tangent.
    """
    c = BoundaryCurve.from_surface(s, which)
    R = s.grid.R
    X0, Z0 = (1 - R**2) / (1 + R**2), 2 * R / (1 + R**2)
    t = c.U_theta / np.linalg.norm(c.U_theta, axis=-1, keepdims=True)
    P = c.U - np.sum(c.U * t, axis=-1, keepdims=True) * t
    P /= np.linalg.norm(P, axis=-1, keepdims=True)
    q = np.cross(P, t)
    eX = X0 * P - Z0 * q
    eZ = Z0 * P + X0 * q
    V = c.U_thetathetatheta
    return np.sum(V * eX, axis=-1), np.sum(V * eZ, axis=-1)
