"""Weierstrass data ``(g, f dz)`` with ``f = (A/2) e^{i theta0} / (g_z z^2)``.

The immersion is ``U = Re int (Phi_1, Phi_2, Phi_3) dz`` with

    Phi_1 = (1 - g^2) f,   Phi_2 = i (1 + g^2) f,   Phi_3 = 2 g f,

so ``U_z = Phi / 2``.  Integration is done term by term on the Laurent
expansions of the three integrands; the ``z^-1`` mode contributes a
``log z`` term whose real part is single-valued once the periods vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .analysis import Partials, SurfaceGrid
from .domain import AnnulusSpec, PolarGrid, circle_samples, contour_integral
from .errors import DataError, ParameterError, RepresentabilityError
from .spectral import LaurentSeries, laurent_expand

GZ_TOL = 1e-14


@dataclass(frozen=True)
class ClosedForm:
    """Gauss map given by closed-form callables for ``g`` and ``g_z``."""

    func: Callable
    deriv: Callable

    def __call__(self, z):
        return np.asarray(self.func(np.asarray(z, dtype=complex)), dtype=complex)

    def derivative(self, z):
        return np.asarray(self.deriv(np.asarray(z, dtype=complex)), dtype=complex) * np.ones_like(z, dtype=complex)


@dataclass(frozen=True)
class WeierstrassData:
    """Gauss map ``g`` (a :class:`LaurentSeries` or :class:`ClosedForm`), height ``A`` and phase ``theta0``."""

    g: LaurentSeries | ClosedForm
    A: float
    theta0: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.A) and self.A > 0):
            raise ParameterError(f"A must be positive, got {self.A!r}")
        if not np.isfinite(self.theta0):
            raise ParameterError("theta0 must be finite")

    @classmethod
    def monomial(cls, c: complex, m: int, A: float, theta0: float = 0.0) -> "WeierstrassData":
        return cls(LaurentSeries.monomial(c, m), A, theta0)

    def g_z(self, z):
        gz = np.asarray(self.g.derivative(z), dtype=complex)
        if np.any(np.abs(gz) < GZ_TOL):
            raise DataError("g_z vanishes: f = (A/2) e^{i theta0} / (g_z z^2) is undefined")
        return gz

    def f(self, z):
        z = np.asarray(z, dtype=complex)
        return 0.5 * self.A * np.exp(1j * self.theta0) / (self.g_z(z) * z**2)

    def integrands(self, z) -> np.ndarray:
        """``(Phi_1, Phi_2, Phi_3)`` stacked on a trailing axis."""
        z = np.asarray(z, dtype=complex)
        g = self.g(z)
        f = self.f(z)
        return np.stack([(1 - g**2) * f, 1j * (1 + g**2) * f, 2 * g * f], axis=-1)

    def validate(self, spec: AnnulusSpec, n: int = 256, n_r: int = 9):
        """Raise :class:`DataError` unless ``g_z != 0`` and ``lambda > 0`` on a sampling of the annulus."""
        radii = np.exp(np.linspace(np.log(spec.inner_radius), np.log(spec.outer_radius), n_r))
        z = radii[:, None] * circle_samples(1.0, n)[None, :]
        lam = metric_lambda(self, z)
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0):
            raise DataError("metric factor not positive on the annulus")


def metric_lambda(d: WeierstrassData, z) -> np.ndarray:
    """Conformal factor ``|f|^2 (1 + |g|^2)^2``."""
    z = np.asarray(z, dtype=complex)
    return np.abs(d.f(z)) ** 2 * (1 + np.abs(d.g(z)) ** 2) ** 2


def laplacian_phi(d: WeierstrassData, z) -> np.ndarray:
    """``Delta phi = -4 |g_z|^2 / (1 + |g|^2)^2`` for ``phi = -ln(lambda)/2``."""
    z = np.asarray(z, dtype=complex)
    return -4 * np.abs(d.g_z(z)) ** 2 / (1 + np.abs(d.g(z)) ** 2) ** 2


def hopf_identity(d: WeierstrassData, z) -> np.ndarray:
    """``|f g_z z^2|``; equals ``A/2`` identically."""
    z = np.asarray(z, dtype=complex)
    return np.abs(d.f(z) * d.g_z(z) * z**2)


# -- periods -------------------------------------------------------------

@dataclass(frozen=True)
class PeriodReport:
    """Contour integrals of the three forms over ``|z| = 1``."""

    values: np.ndarray
    error_estimate: np.ndarray
    tol: float

    @property
    def real_parts(self) -> np.ndarray:
        return self.values.real

    @property
    def representable(self) -> bool:
        return bool(np.all(np.abs(self.values.real) < self.tol))


def periods(d: WeierstrassData, n: int = 256, tol: float = 1e-9, rho: float = 1.0) -> PeriodReport:
    """Trapezoid periods with ``n`` and ``2n`` nodes; their difference is the error estimate."""
    if n < 32 or (n & (n - 1)):
        raise ParameterError(f"n must be a power of two >= 32, got {n!r}")

    def integrate(m):
        z = circle_samples(rho, m)
        Phi = d.integrands(z)
        return np.array([contour_integral(Phi[:, i], z) for i in range(3)])

    coarse, fine = integrate(n), integrate(2 * n)
    return PeriodReport(fine, np.abs(fine - coarse), tol)


# -- integration ----------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassSurface:
    """Exact evaluator of the integrated immersion and its polar partials."""

    series: tuple[LaurentSeries, LaurentSeries, LaurentSeries]
    offset: np.ndarray

    @property
    def derivative_series(self):
        return tuple(s.differentiated() for s in self.series)

    def position(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.stack([s.antiderivative(z).real for s in self.series], axis=-1) + self.offset

    def __call__(self, r, theta) -> Partials:
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        z = r * np.exp(1j * theta)
        e = np.exp(1j * theta)[..., None]
        zz = z[..., None]
        Phi = np.stack([s(z) for s in self.series], axis=-1)
        dPhi = np.stack([s(z) for s in self.derivative_series], axis=-1)
        return Partials(
            U=self.position(z),
            U_r=(Phi * e).real,
            U_theta=(1j * zz * Phi).real,
            U_rr=(dPhi * e**2).real,
            U_rtheta=(1j * zz * dPhi * e + 1j * e * Phi).real,
            U_thetatheta=(-(zz**2) * dPhi - zz * Phi).real,
        )


def expand_integrands(d: WeierstrassData, spec: AnnulusSpec, tail_tol: float = 1e-12):
    """Laurent series of ``Phi_1, Phi_2, Phi_3`` resolved on the closed annulus."""
    return tuple(
        laurent_expand(lambda z, i=i: d.integrands(z)[..., i], spec, tail_tol=tail_tol) for i in range(3)
    )


def weierstrass_surface(
    d: WeierstrassData,
    spec: AnnulusSpec,
    base: tuple[complex, np.ndarray] | None = None,
    period_tol: float = 1e-9,
    tail_tol: float = 1e-12,
) -> WeierstrassSurface:
    d.validate(spec)
    rep = periods(d, tol=period_tol, rho=spec.core_radius)
    if not rep.representable:
        raise RepresentabilityError(f"real periods {rep.real_parts} exceed {period_tol:g}")
    series = expand_integrands(d, spec, tail_tol)
    offset = np.zeros(3)
    if base is not None:
        z0, U0 = base
        spec.check(z0)
        zero = WeierstrassSurface(series, np.zeros(3))
        offset = np.asarray(U0, dtype=float) - zero.position(complex(z0))
    return WeierstrassSurface(series, offset)


def integrate_immersion(
    d: WeierstrassData,
    grid: PolarGrid,
    base: tuple[complex, np.ndarray] | None = None,
    period_tol: float = 1e-9,
    tail_tol: float = 1e-12,
) -> SurfaceGrid:
    """Analytic-mode surface ``U = Re int Phi dz + U0``.

    Without ``base`` the antiderivatives carry no constant term, which centres
    the surface (``X0 = Y0 = 0`` for rotationally symmetric data).
    """
    surf = weierstrass_surface(d, grid.spec, base, period_tol, tail_tol)
    return SurfaceGrid.from_evaluator(grid, surf)


def path_integral(d: WeierstrassData, z_start: complex, z_end: complex, route: str = "radial", n_nodes: int = 48, n_pieces: int = 8) -> np.ndarray:
    """``Re int Phi dz`` along a radial segment and a circular arc.

    ``route="radial"`` goes radially first then along ``|z| = |z_end|``;
    ``route="angular"`` goes along ``|z| = |z_start|`` first.  The arc
    turns counterclockwise by ``arg(z_end) - arg(z_start)`` taken in
    ``[0, 2 pi)``.  Composite Gauss-Legendre quadrature.
    """
    if route not in ("radial", "angular"):
        raise ParameterError(f"route must be 'radial' or 'angular', got {route!r}")
    x, w = leggauss(n_nodes)
    r0, r1 = abs(z_start), abs(z_end)
    t0 = np.angle(z_start)
    dt = np.mod(np.angle(z_end) - t0, 2 * np.pi)

    def radial(theta, ra, rb):
        # z = exp(u + i theta), dz = z du
        total = np.zeros(3, dtype=complex)
        edges = np.linspace(np.log(ra), np.log(rb), n_pieces + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            u = 0.5 * (b - a) * x + 0.5 * (a + b)
            z = np.exp(u + 1j * theta)
            total += 0.5 * (b - a) * np.sum(w[:, None] * d.integrands(z) * z[:, None], axis=0)
        return total

    def arc(rho, ta, span):
        total = np.zeros(3, dtype=complex)
        edges = np.linspace(ta, ta + span, n_pieces + 1)
        for a, b in zip(edges[:-1], edges[1:]):
            t = 0.5 * (b - a) * x + 0.5 * (a + b)
            z = rho * np.exp(1j * t)
            total += 0.5 * (b - a) * np.sum(w[:, None] * d.integrands(z) * (1j * z)[:, None], axis=0)
        return total

    if route == "radial":
        total = radial(t0, r0, r1) + arc(r1, t0, dt)
    else:
        total = arc(r0, t0, dt) + radial(t0 + dt, r0, r1)
    return total.real
