"""Differential-geometric checks on a sampled conformal immersion of the annulus.

A :class:`SurfaceGrid` stores ``U(r_j, theta_k)`` on a :class:`PolarGrid`.
Derivatives come either from an analytic evaluator (exact) or from the
samples: spectral in ``theta`` and finite differences in ``u = ln r``.

The Wirtinger derivative used throughout is
``d/dz = exp(-i theta) (d/dr - (i/r) d/dtheta) / 2``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from math import factorial
from typing import Callable

import numpy as np

from .domain import PolarGrid
from .errors import DegeneracyError, DomainError, ParameterError, ResolutionError

DEGENERACY_TOL = 1e-14


@dataclass(frozen=True)
class Partials:
    """Position and first/second partials in polar coordinates, shape ``(..., 3)``."""

    U: np.ndarray
    U_r: np.ndarray
    U_theta: np.ndarray
    U_rr: np.ndarray
    U_rtheta: np.ndarray
    U_thetatheta: np.ndarray

    def at(self, j: int, k: int) -> "Partials":
        return Partials(*(getattr(self, f.name)[j, k] for f in fields(self)))


Evaluator = Callable[[np.ndarray, np.ndarray], Partials]


# -- finite differences ---------------------------------------------------

def fd_weights(offsets, deriv: int) -> np.ndarray:
    """Weights ``w`` with ``sum w_i f(x + s_i h) ~ h**deriv f^(deriv)(x)``."""
    s = np.asarray(offsets, dtype=float)
    n = len(s)
    V = np.vander(s, n, increasing=True).T / np.array([factorial(m) for m in range(n)])[:, None]
    rhs = np.zeros(n)
    rhs[deriv] = 1.0
    return np.linalg.solve(V, rhs)


def _stencil_rows(n: int, deriv: int, order: int):
    """Per-row (start index, weights) for a derivative of accuracy ``order``."""
    central = order + 1 if order % 2 == 0 else order + 2
    one_sided = order + deriv
    half = central // 2
    rows = []
    for j in range(n):
        if j - half >= 0 and j + half < n:
            start, width = j - half, central
        else:
            width = one_sided
            start = min(max(j - width // 2, 0), n - width)
        w = fd_weights(np.arange(start, start + width) - j, deriv)
        rows.append((start, w))
    return rows


def radial_derivative(f: np.ndarray, du: float, deriv: int, order: int = 2) -> np.ndarray:
    """Derivative along axis 0 of samples uniform in ``u``.

    Central stencils in the interior, one-sided stencils of the same
    accuracy at the two boundary rows.
    """
    n = f.shape[0]
    if n < order + deriv:
        raise ResolutionError(f"{n} radial nodes too few for order-{order} derivative {deriv}")
    out = np.empty_like(f, dtype=float)
    for j, (start, w) in enumerate(_stencil_rows(n, deriv, order)):
        out[j] = np.tensordot(w, f[start:start + len(w)], axes=(0, 0))
    return out / du**deriv


def spectral_theta_derivative(f: np.ndarray, deriv: int = 1, axis: int = 1) -> np.ndarray:
    """Exact periodic derivative of real samples on a uniform angular grid."""
    n = f.shape[axis]
    k = np.fft.fftfreq(n, d=1.0 / n)
    mult = (1j * k) ** deriv
    if deriv % 2 == 1:
        mult[n // 2] = 0.0
    shape = [1] * f.ndim
    shape[axis] = n
    F = np.fft.fft(f, axis=axis)
    return np.fft.ifft(F * mult.reshape(shape), axis=axis).real


# -- surfaces -------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceGrid:
    """Sampled immersion ``U`` on a polar grid.

    ``derivative_mode`` is ``"analytic"`` when an ``evaluator(r, theta)``
    returning :class:`Partials` is attached, otherwise ``"numeric"``.
    """

    grid: PolarGrid
    values: np.ndarray
    derivative_mode: str = "numeric"
    evaluator: Evaluator | None = None
    radial_order: int = 2

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_r, self.grid.n_theta, 3):
            raise ParameterError(
                f"values shape {values.shape} does not match grid "
                f"({self.grid.n_r}, {self.grid.n_theta}, 3)"
            )
        if not np.all(np.isfinite(values)):
            raise ParameterError("values contain non-finite entries")
        if self.derivative_mode not in ("analytic", "numeric"):
            raise ParameterError(f"unknown derivative_mode {self.derivative_mode!r}")
        if self.derivative_mode == "analytic" and self.evaluator is None:
            raise ParameterError("analytic mode requires an evaluator")
        if self.radial_order not in (2, 4, 6, 8):
            raise ParameterError(f"radial_order must be 2, 4, 6 or 8, got {self.radial_order!r}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_evaluator(cls, grid: PolarGrid, evaluator: Evaluator) -> "SurfaceGrid":
        r, th = grid.mesh()
        return cls(grid, evaluator(r, th).U, "analytic", evaluator)

    @classmethod
    def numeric(cls, grid: PolarGrid, values, radial_order: int = 2) -> "SurfaceGrid":
        return cls(grid, values, "numeric", None, radial_order)

    def as_numeric(self, radial_order: int = 2) -> "SurfaceGrid":
        return SurfaceGrid.numeric(self.grid, self.values, radial_order)

    def transformed(self, rotation=None, translation=None, scale: float = 1.0) -> "SurfaceGrid":
        """Apply ``x -> scale * Q x + b`` to values and (if present) the evaluator."""
        Q = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
        b = np.zeros(3) if translation is None else np.asarray(translation, dtype=float)

        def move(v, shift):
            out = scale * v @ Q.T
            return out + b if shift else out

        if self.evaluator is None:
            return SurfaceGrid(self.grid, move(self.values, True), "numeric", None, self.radial_order)
        base = self.evaluator

        def evaluator(r, th):
            p = base(r, th)
            return Partials(move(p.U, True), *(move(getattr(p, f.name), False) for f in fields(p)[1:]))

        return SurfaceGrid.from_evaluator(self.grid, evaluator)

    def inverted(self) -> "SurfaceGrid":
        """The surface reparametrized by ``z -> 1/conj(z)`` (swaps the boundary circles).

        Requires the symmetric annulus so that the grid maps onto itself.
        """
        if not self.grid.spec.symmetric:
            raise ParameterError("inversion needs a symmetric annulus")
        if self.evaluator is None:
            return SurfaceGrid(self.grid, self.values[::-1], "numeric", None, self.radial_order)
        base = self.evaluator

        def evaluator(r, th):
            r = np.asarray(r, dtype=float)
            p = base(1.0 / r, th)
            q = r[..., None]
            return Partials(
                U=p.U,
                U_r=-p.U_r / q**2,
                U_theta=p.U_theta,
                U_rr=p.U_rr / q**4 + 2 * p.U_r / q**3,
                U_rtheta=-p.U_rtheta / q**2,
                U_thetatheta=p.U_thetatheta,
            )

        return SurfaceGrid.from_evaluator(self.grid, evaluator)

    @cached_property
    def partials(self) -> Partials:
        if self.derivative_mode == "analytic":
            r, th = self.grid.mesh()
            return self.evaluator(r, th)
        return _numeric_partials(self.grid, self.values, self.radial_order)


def _numeric_partials(grid: PolarGrid, values: np.ndarray, order: int) -> Partials:
    if grid.n_r < max(5, order + 2):
        raise ResolutionError(f"numeric mode needs n_r >= {max(5, order + 2)}, got {grid.n_r}")
    r = grid.radii[:, None, None]
    h = grid.du
    U_u = radial_derivative(values, h, 1, order)
    U_uu = radial_derivative(values, h, 2, order)
    U_th = spectral_theta_derivative(values, 1)
    U_thth = spectral_theta_derivative(values, 2)
    U_uth = spectral_theta_derivative(U_u, 1)
    return Partials(
        U=values,
        U_r=U_u / r,
        U_theta=U_th,
        U_rr=(U_uu - U_u) / r**2,
        U_rtheta=U_uth / r,
        U_thetatheta=U_thth,
    )


def partials(s: SurfaceGrid, at: tuple[int, int] | None = None) -> Partials:
    """All polar partials on the grid, or at node ``at = (j, k)``."""
    p = s.partials
    if at is None:
        return p
    j, k = at
    if not (0 <= j < s.grid.n_r and 0 <= k < s.grid.n_theta):
        raise ParameterError(f"node {at} outside grid {s.grid.shape}")
    return p.at(j, k)


def wirtinger(p: Partials, r, theta) -> tuple[np.ndarray, np.ndarray]:
    """``(U_z, U_zz)`` from polar partials."""
    r = np.asarray(r, dtype=float)[..., None]
    e1 = np.exp(-1j * np.asarray(theta))[..., None]
    U_z = 0.5 * e1 * (p.U_r - 1j / r * p.U_theta)
    U_zz = 0.25 * e1**2 * (
        p.U_rr - p.U_thetatheta / r**2 - 2j * p.U_rtheta / r + 2j * p.U_theta / r**2 - p.U_r / r
    )
    return U_z, U_zz


def _cdot(a, b):
    return np.sum(a * b, axis=-1)


# -- residuals ------------------------------------------------------------

def conformality_residual(s: SurfaceGrid) -> float:
    """``max |U_z . U_z|`` over all nodes."""
    r, th = s.grid.mesh()
    U_z, _ = wirtinger(s.partials, r, th)
    return float(np.max(np.abs(_cdot(U_z, U_z))))


def laplacian(p: Partials, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)[..., None]
    return p.U_rr + p.U_r / r + p.U_thetatheta / r**2


def harmonicity_residual(s: SurfaceGrid) -> float:
    """``max |Delta U|`` over interior rows."""
    r, _ = s.grid.mesh()
    lap = laplacian(s.partials, r)[1:-1]
    return float(np.max(np.linalg.norm(lap, axis=-1)))


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental form coefficients in polar coordinates.

    Arrays broadcast over nodes; ``n`` has a trailing axis of length 3.
    """

    lam: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    N: np.ndarray
    n: np.ndarray

    def at(self, j: int, k: int) -> "FundamentalForms":
        return FundamentalForms(*(getattr(self, f.name)[j, k] for f in fields(self)))


def forms_from_partials(p: Partials, orientation: float = 1.0) -> FundamentalForms:
    cross = np.cross(p.U_r, p.U_theta)
    norm = np.linalg.norm(cross, axis=-1)
    if np.any(norm < DEGENERACY_TOL):
        raise DegeneracyError("tangent vectors are (numerically) parallel")
    n = orientation * cross / norm[..., None]
    E = _cdot(p.U_r, p.U_r)
    return FundamentalForms(
        lam=E,
        E=E,
        F=_cdot(p.U_r, p.U_theta),
        G=_cdot(p.U_theta, p.U_theta),
        L=_cdot(p.U_rr, n),
        M=_cdot(p.U_rtheta, n),
        N=_cdot(p.U_thetatheta, n),
        n=n,
    )


def normal_orientation(s: SurfaceGrid) -> float:
    """+1 or -1 so that ``N >= 0`` (on average) along the outer boundary row."""
    outer = s.partials.at(-1, slice(None))
    f = forms_from_partials(outer)
    return -1.0 if np.mean(f.N) < 0 else 1.0


def forms(s: SurfaceGrid, conformality_tol: float | None = None) -> FundamentalForms:
    """Fundamental forms at every node, normal oriented by :func:`normal_orientation`."""
    if conformality_tol is not None:
        res = conformality_residual(s)
        if res > conformality_tol:
            raise DomainError(f"surface not conformal: residual {res:.3e} > {conformality_tol:.3e}")
    return forms_from_partials(s.partials, normal_orientation(s))


def forms_at(s: SurfaceGrid, at: tuple[int, int], conformality_tol: float | None = None) -> FundamentalForms:
    j, k = at
    if conformality_tol is not None:
        res = conformality_residual(s)
        if res > conformality_tol:
            raise DomainError(f"surface not conformal: residual {res:.3e} > {conformality_tol:.3e}")
    return forms_from_partials(partials(s, at), normal_orientation(s))


def minimality_residual(s: SurfaceGrid) -> float:
    """``max |E N + G L|``; vanishes for a conformal minimal immersion."""
    f = forms(s)
    return float(np.max(np.abs(f.E * f.N + f.G * f.L)))


# -- Hopf quartic ---------------------------------------------------------

@dataclass(frozen=True)
class HopfSample:
    """``(r^2 L - N - 2 i r M)^2`` at ``z`` with its raw-derivative cross-check.

    ``raw_value`` is ``16 z^4 (U_zz - x U_z).(U_zz - x U_z)`` with
    ``x = (U_zz . conj U_z) / |U_z|^2``; ``full_value`` drops the tangential
    projection.  The factor 16 accounts for the 1/2 in each Wirtinger
    derivative.
    """

    z: complex | np.ndarray
    value: complex | np.ndarray
    raw_value: complex | np.ndarray
    full_value: complex | np.ndarray

    @property
    def discrepancy(self) -> float:
        return float(np.max(np.abs(np.asarray(self.value) - np.asarray(self.raw_value))))

    @property
    def tangential_discrepancy(self) -> float:
        return float(np.max(np.abs(np.asarray(self.raw_value) - np.asarray(self.full_value))))


def _hopf(p: Partials, f: FundamentalForms, r, theta) -> HopfSample:
    r = np.asarray(r, dtype=float)
    z = r * np.exp(1j * np.asarray(theta))
    value = (r**2 * f.L - f.N - 2j * r * f.M) ** 2
    U_z, U_zz = wirtinger(p, r, theta)
    x = _cdot(U_zz, np.conj(U_z)) / _cdot(U_z, np.conj(U_z)).real
    perp = U_zz - x[..., None] * U_z
    raw = 16 * z**4 * _cdot(perp, perp)
    full = 16 * z**4 * _cdot(U_zz, U_zz)
    return HopfSample(z, value, raw, full)


def hopf_field(s: SurfaceGrid) -> HopfSample:
    """Hopf quartic at every node."""
    r, th = s.grid.mesh()
    return _hopf(s.partials, forms(s), r, th)


def hopf_quartic(s: SurfaceGrid, at: tuple[int, int]) -> HopfSample:
    j, k = at
    p = partials(s, at)
    f = forms_at(s, at)
    return _hopf(p, f, s.grid.radii[j], s.grid.theta[k])


def hopf_spread(sample: HopfSample) -> float:
    """Largest peak-to-peak range of the real or imaginary part."""
    v = np.asarray(sample.value)
    return float(max(np.ptp(v.real), np.ptp(v.imag)))


# -- Gauss equation -------------------------------------------------------

_GAUSS_FD_STEP = 1e-2
_GAUSS_FD_OFFSETS = np.arange(-3, 4)


def _phi(lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("conformal factor must be positive")
    return -0.5 * np.log(lam)


def laplacian_phi(s: SurfaceGrid) -> np.ndarray:
    """``Delta phi`` with ``phi = -ln(lambda) / 2`` on the interior rows.

    In ``u = ln r``, ``Delta = (d_uu + d_thth) / r^2``.  Numeric surfaces
    differentiate the interior-row values of ``phi`` only, since boundary-row
    ``lambda`` comes from one-sided stencils.  Analytic surfaces use a
    sixth-order central stencil of fixed small step in ``u`` with off-grid
    evaluations.  Returns shape ``(n_r - 2, n_theta)``.
    """
    g = s.grid
    r, th = g.mesh()
    r, th = r[1:-1], th[1:-1]
    lam = _cdot(s.partials.U_r, s.partials.U_r)[1:-1]
    phi = _phi(lam)
    phi_thth = spectral_theta_derivative(phi, 2)
    if s.derivative_mode == "numeric":
        phi_uu = radial_derivative(phi, g.du, 2, s.radial_order)
    else:
        h = _GAUSS_FD_STEP
        w = fd_weights(_GAUSS_FD_OFFSETS, 2)
        phi_uu = np.zeros_like(phi)
        for wi, off in zip(w, _GAUSS_FD_OFFSETS):
            if off == 0:
                phi_uu += wi * phi
                continue
            p = s.evaluator(r * np.exp(off * h), th)
            phi_uu += wi * _phi(_cdot(p.U_r, p.U_r))
        phi_uu /= h**2
    return (phi_uu + phi_thth) / r**2


def gauss_equation_residual(s: SurfaceGrid, A: float) -> float:
    """``max |Delta phi + A^2 r^-4 exp(2 phi)|`` over interior rows."""
    r = s.grid.radii[1:-1, None]
    lam = _cdot(s.partials.U_r, s.partials.U_r)[1:-1]
    res = laplacian_phi(s) + A**2 / r**4 / lam
    return float(np.max(np.abs(res)))


def gauss_curvature_from_constant(lam, r, A: float):
    """``K = -A^2 / (lambda^2 r^4)`` for forms ``L = -A/r^2, M = 0, N = A``."""
    return -(A**2) / (np.asarray(lam) ** 2 * np.asarray(r) ** 4)


def gauss_curvature(f: FundamentalForms):
    """``K = (L N - M^2) / (E G - F^2)``."""
    return (f.L * f.N - f.M**2) / (f.E * f.G - f.F**2)


def estimate_hopf_constant(s: SurfaceGrid) -> tuple[complex, float]:
    """Mean Hopf quartic over the grid and its spread."""
    h = hopf_field(s)
    return complex(np.mean(h.value)), hopf_spread(h)
