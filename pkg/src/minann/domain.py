"""Annulus domains, log-polar grids and circle samplers.

Every other module works on the round annulus ``1/R <= |z| <= R`` (or an
explicit ``r1 <= |z| <= r2``), sampled on a grid that is uniform in
``u = ln r`` and uniform, periodic in ``theta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterError


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class AnnulusSpec:
    """Round annulus ``inner_radius <= |z| <= outer_radius``.

    With ``inner_radius`` omitted the symmetric convention ``r1 * r2 = 1``
    is used.
    """

    outer_radius: float
    inner_radius: float | None = None

    def __post_init__(self):
        R = float(self.outer_radius)
        if not np.isfinite(R) or R <= 1.0:
            raise ParameterError(f"outer_radius must be > 1, got {self.outer_radius!r}")
        object.__setattr__(self, "outer_radius", R)
        if self.inner_radius is None:
            object.__setattr__(self, "inner_radius", 1.0 / R)
        else:
            r1 = float(self.inner_radius)
            if not (0.0 < r1 < R):
                raise ParameterError(f"inner_radius must lie in (0, {R}), got {r1!r}")
            object.__setattr__(self, "inner_radius", r1)

    @property
    def symmetric(self) -> bool:
        return abs(self.inner_radius * self.outer_radius - 1.0) < 1e-14

    @property
    def core_radius(self) -> float:
        """Geometric mean of the two radii (1 for the symmetric annulus)."""
        return float(np.sqrt(self.inner_radius * self.outer_radius))

    def contains(self, z, slack: float = 1e-12) -> np.ndarray:
        r = np.abs(np.asarray(z))
        return (r >= self.inner_radius * (1 - slack)) & (r <= self.outer_radius * (1 + slack))

    def check(self, z, slack: float = 1e-12):
        if not np.all(self.contains(z, slack)):
            raise DomainError(
                f"point(s) outside annulus [{self.inner_radius:g}, {self.outer_radius:g}]"
            )


@dataclass(frozen=True)
class PolarGrid:
    """Tensor grid ``z_jk = r_j exp(i theta_k)``.

    ``r_j`` is uniform in ``ln r`` between the two radii (both included);
    ``theta_k = 2 pi k / n_theta`` excludes the duplicate endpoint.
    """

    spec: AnnulusSpec
    n_r: int
    n_theta: int
    radii: np.ndarray = field(init=False, repr=False, compare=False)
    theta: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n_r) != self.n_r or self.n_r < 3:
            raise ParameterError(f"n_r must be an integer >= 3, got {self.n_r!r}")
        if int(self.n_theta) != self.n_theta or self.n_theta < 8 or not _is_power_of_two(int(self.n_theta)):
            raise ParameterError(f"n_theta must be a power of two >= 8, got {self.n_theta!r}")
        u = np.linspace(np.log(self.spec.inner_radius), np.log(self.spec.outer_radius), self.n_r)
        radii = np.exp(u)
        # keep the endpoints bit-exact
        radii[0], radii[-1] = self.spec.inner_radius, self.spec.outer_radius
        theta = 2.0 * np.pi * np.arange(self.n_theta) / self.n_theta
        radii.flags.writeable = False
        theta.flags.writeable = False
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "theta", theta)

    @property
    def R(self) -> float:
        return self.spec.outer_radius

    @property
    def log_radii(self) -> np.ndarray:
        return np.log(self.radii)

    @property
    def du(self) -> float:
        """Uniform step in ``u = ln r``."""
        return float(np.log(self.spec.outer_radius / self.spec.inner_radius) / (self.n_r - 1))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_r, self.n_theta)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcast ``(r, theta)`` arrays of shape ``(n_r, n_theta)``."""
        return np.meshgrid(self.radii, self.theta, indexing="ij")

    def nodes(self) -> np.ndarray:
        r, th = self.mesh()
        return r * np.exp(1j * th)

    def wavenumbers(self) -> np.ndarray:
        """Integer angular wavenumbers in FFT order."""
        return np.fft.fftfreq(self.n_theta, d=1.0 / self.n_theta)


def make_grid(spec: AnnulusSpec, n_r: int, n_theta: int) -> PolarGrid:
    return PolarGrid(spec, n_r, n_theta)


def circle_samples(rho: float, n: int) -> np.ndarray:
    """``n`` counterclockwise points ``rho * exp(2 pi i k / n)``."""
    if not rho > 0:
        raise ParameterError(f"rho must be positive, got {rho!r}")
    if int(n) != n or not _is_power_of_two(int(n)):
        raise ParameterError(f"n must be a power of two, got {n!r}")
    return rho * np.exp(2j * np.pi * np.arange(n) / n)


def contour_integral(values: np.ndarray, points: np.ndarray) -> complex:
    """Periodic trapezoid rule for ``oint h(z) dz`` on a sampled circle.

    ``points`` must come from :func:`circle_samples`; ``dz = i z dtheta``.
    """
    n = len(points)
    return complex(np.sum(values * 1j * points) * (2.0 * np.pi / n))
