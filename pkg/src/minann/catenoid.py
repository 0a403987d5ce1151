"""The critical catenoid: defining constants, closed-form immersion and forms.

In conformal coordinates on ``1/r2 <= |z| <= r2`` the critical catenoid is

    X(z) = (a cosh(ln r) cos(theta), a cosh(ln r) sin(theta), a ln r)

with ``r2**2 + 1 = (r2**2 - 1) ln r2`` and ``a = 2 r2 / ((r2**2 + 1) ln r2)``.
Writing ``t = ln r2`` the first relation becomes ``t tanh(t) = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .analysis import FundamentalForms, Partials, SurfaceGrid
from .domain import AnnulusSpec, PolarGrid, make_grid
from .errors import DomainError, ParameterError

# Bracket for r2 (equivalently t in [ln 2, ln 5]).
R2_BRACKET = (2.0, 5.0)


@dataclass(frozen=True)
class CatenoidParams:
    """Solved constants; ``A`` is the second-form constant (equal to ``a``)."""

    t: float
    r2: float
    a: float
    A: float

    @property
    def r1(self) -> float:
        return 1.0 / self.r2

    @property
    def residual(self) -> float:
        """``|r2^2 + 1 - (r2^2 - 1) ln r2|``."""
        return abs(defining_relation(self.r2))

    @property
    def spec(self) -> AnnulusSpec:
        return AnnulusSpec(self.r2)

    def as_dict(self) -> dict:
        return {"t": self.t, "r2": self.r2, "a": self.a, "A": self.A, "residual": self.residual}


def defining_relation(r2: float) -> float:
    return r2**2 + 1.0 - (r2**2 - 1.0) * np.log(r2)


def solve_catenoid_params(tol: float = 1e-13) -> CatenoidParams:
    """Solve ``t tanh t = 1`` on the bracket and derive ``r2`` and ``a``."""
    if not (0 < tol < 1e-6):
        raise ParameterError(f"tol must lie in (0, 1e-6), got {tol!r}")
    lo, hi = np.log(R2_BRACKET[0]), np.log(R2_BRACKET[1])
    # xtol in t; h'(r2) ~ 14 near the root so this comfortably meets tol in r2-form
    t = brentq(lambda t: t * np.tanh(t) - 1.0, lo, hi, xtol=min(tol, 1e-15) * 1e-2, rtol=4 * np.finfo(float).eps)
    r2 = float(np.exp(t))
    a = 2.0 * r2 / ((r2**2 + 1.0) * np.log(r2))
    return CatenoidParams(t=float(t), r2=r2, a=float(a), A=float(a))


def catenoid_partials(p: CatenoidParams, r, theta) -> Partials:
    """Closed-form position and polar partials (no domain check)."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    a = p.a
    u = np.log(r)
    ch, sh = np.cosh(u), np.sinh(u)
    c, s = np.cos(theta), np.sin(theta)
    zero = np.zeros_like(r * theta)
    radial = np.stack([c, s, zero], axis=-1)
    angular = np.stack([-s, c, zero], axis=-1)
    ez = np.stack([zero, zero, np.ones_like(zero)], axis=-1)
    ch_, sh_, r_, u_ = (np.broadcast_to(x, zero.shape)[..., None] for x in (ch, sh, r, u))
    return Partials(
        U=a * ch_ * radial + a * u_ * ez,
        U_r=a * sh_ / r_ * radial + a / r_ * ez,
        U_theta=a * ch_ * angular,
        # d/dr (sinh(ln r) / r) = 1 / r^3
        U_rr=a / r_**3 * radial - a / r_**2 * ez,
        U_rtheta=a * sh_ / r_ * angular,
        U_thetatheta=-a * ch_ * radial,
    )


def catenoid_immersion(p: CatenoidParams, z) -> np.ndarray:
    """``(a cosh(ln r) cos t, a cosh(ln r) sin t, a ln r)`` for ``z`` in the annulus."""
    z = np.asarray(z, dtype=complex)
    p.spec.check(z)
    return catenoid_partials(p, np.abs(z), np.angle(z)).U


def catenoid_forms(p: CatenoidParams, r) -> FundamentalForms:
    """Closed-form fundamental forms at radius ``r`` (normal with ``N > 0``)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < p.r1 * (1 - 1e-12)) or np.any(r > p.r2 * (1 + 1e-12)):
        raise DomainError(f"r outside [{p.r1:g}, {p.r2:g}]")
    a = p.a
    ch2 = np.cosh(np.log(r)) ** 2
    lam = a**2 * ch2 / r**2
    zero = np.zeros_like(r)
    # unit normal at theta = 0; rotates with theta
    sh = np.sinh(np.log(r))
    n = np.stack([-np.ones_like(r), zero, sh], axis=-1) / np.cosh(np.log(r))[..., None]
    return FundamentalForms(
        lam=lam, E=lam, F=zero, G=a**2 * ch2, L=-a / r**2, M=zero, N=a + zero, n=n
    )


def catenoid_surface(p: CatenoidParams, n_r: int = 64, n_theta: int = 256, grid: PolarGrid | None = None) -> SurfaceGrid:
    """Analytic-mode :class:`SurfaceGrid` of the critical catenoid."""
    grid = grid or make_grid(p.spec, n_r, n_theta)
    return SurfaceGrid.from_evaluator(grid, lambda r, th: catenoid_partials(p, r, th))
