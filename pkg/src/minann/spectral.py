"""Laurent and Fourier machinery on the annulus.

Coefficients of a function analytic on ``r1 <= |z| <= r2`` are read off
the FFT of its samples on a circle: mode ``k`` of ``h(rho e^{i theta})``
equals ``p_k rho^k`` up to aliasing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .domain import AnnulusSpec, circle_samples
from .errors import (
    AnalyticityError,
    FlatSurfaceError,
    InconsistencyError,
    ParameterError,
    ResolutionError,
)


@dataclass(frozen=True)
class LaurentSeries:
    """Finite Laurent series ``sum_{k=k_min}^{k_max} p_k z^k``."""

    k_min: int
    coeffs: np.ndarray
    radii: tuple[float, float] | None = None
    discrepancy: float = 0.0
    tail_ratio: float = 0.0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or len(c) == 0:
            raise ParameterError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ParameterError("coeffs must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "k_min", int(self.k_min))

    @classmethod
    def monomial(cls, c: complex, m: int) -> "LaurentSeries":
        return cls(m, [c])

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.coeffs) - 1

    @property
    def ks(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    def coefficient(self, k: int) -> complex:
        i = k - self.k_min
        return complex(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0.0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return _evaluate(self.k_min, self.coeffs, z)

    def derivative(self, z):
        return self.differentiated()(z)

    def differentiated(self) -> "LaurentSeries":
        ks = self.ks
        return LaurentSeries(self.k_min - 1, self.coeffs * ks)

    def antiderivative(self, z):
        """``sum_{k != -1} p_k z^{k+1}/(k+1) + p_{-1} log z`` (principal branch)."""
        z = np.asarray(z, dtype=complex)
        ks = self.ks
        c = np.where(ks == -1, 0.0, self.coeffs / np.where(ks == -1, 1, ks + 1))
        out = _evaluate(self.k_min + 1, c, z)
        return out + self.coefficient(-1) * np.log(z)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


def _evaluate(k_min: int, coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Horner separately on nonnegative and negative powers
    out = np.zeros(z.shape, dtype=complex)
    ks = k_min + np.arange(len(coeffs))
    pos = coeffs[ks >= 0]
    if len(pos):
        kp0 = max(k_min, 0)
        acc = np.zeros_like(out)
        for c in pos[::-1]:
            acc = acc * z + c
        out += acc * z**kp0
    neg = coeffs[ks < 0]
    if len(neg):
        w = 1.0 / z
        kn_max = min(ks[-1], -1)  # closest-to-zero negative power
        acc = np.zeros_like(out)
        for c in neg:  # ascending k: most negative first
            acc = acc * w + c
        out += acc * w ** (-kn_max)
    return out


def fourier_modes(samples: np.ndarray) -> np.ndarray:
    """Normalized DFT: ``samples[j] = sum_k F_k exp(2 pi i j k / n)``."""
    return np.fft.fft(samples, axis=-1) / samples.shape[-1]


def _coefficients_on_circle(h: Callable, rho: float, n: int, ks: np.ndarray) -> np.ndarray:
    F = fourier_modes(np.asarray(h(circle_samples(rho, n)), dtype=complex))
    return F[np.mod(ks, n)] * rho ** (-ks.astype(float))


def laurent_extract(
    h: Callable,
    spec: AnnulusSpec,
    k_range: tuple[int, int] = (-16, 16),
    n: int | None = None,
    check: bool = True,
) -> LaurentSeries:
    """Coefficients ``p_k`` for ``k_range[0] <= k <= k_range[1]``.

    Extracted on the core circle and cross-checked on ``rho = sqrt(R)``
    (the geometric mean of core and outer radius); the larger
    coefficient-wise difference is stored as ``discrepancy``.
    """
    k_lo, k_hi = map(int, k_range)
    if k_hi < k_lo:
        raise ParameterError(f"empty k_range {k_range}")
    kmax = max(abs(k_lo), abs(k_hi))
    if n is None:
        n = max(64, 1 << int(np.ceil(np.log2(4 * kmax + 4))))
    if kmax >= n // 2:
        raise ResolutionError(f"k_range {k_range} exceeds FFT band of n = {n}")
    ks = np.arange(k_lo, k_hi + 1)
    rho1 = spec.core_radius
    rho2 = float(np.sqrt(spec.core_radius * spec.outer_radius))
    p1 = _coefficients_on_circle(h, rho1, n, ks)
    p2 = _coefficients_on_circle(h, rho2, n, ks)
    scale = float(np.max(np.abs(p1)))
    disc = float(np.max(np.abs(p1 - p2)))
    if check and scale > 0 and disc > 1e-8 * scale:
        raise AnalyticityError(
            f"Laurent coefficients differ by {disc:.3e} between radii {rho1:g} and {rho2:g}"
        )
    n_tail = max(1, int(np.ceil(0.1 * len(ks))))
    tail = np.concatenate([np.abs(p1[:n_tail]), np.abs(p1[-n_tail:])])
    tail_ratio = float(np.max(tail) / scale) if scale > 0 else 0.0
    return LaurentSeries(k_lo, p1, (rho1, rho2), disc, tail_ratio)


def laurent_expand(
    h: Callable,
    spec: AnnulusSpec,
    tail_tol: float = 1e-12,
    n_start: int = 64,
    n_max: int = 1 << 14,
) -> LaurentSeries:
    """Full Laurent expansion of ``h`` resolved on the closed annulus.

    Nonnegative powers are read on the outer circle and negative powers on
    the inner circle, so that rounding noise is damped rather than amplified
    when the series is evaluated out to the boundary.  The FFT length doubles
    until the band-edge modes on both boundary circles fall below
    ``tail_tol`` times the largest mode.
    """
    n = n_start
    while True:
        ks = np.arange(-n // 2 + 1, n // 2)
        Fo = fourier_modes(np.asarray(h(circle_samples(spec.outer_radius, n)), dtype=complex))
        Fi = fourier_modes(np.asarray(h(circle_samples(spec.inner_radius, n)), dtype=complex))
        scale = max(np.max(np.abs(Fo)), np.max(np.abs(Fi)))
        edge = max(4, n // 16)
        tail = max(np.max(np.abs(Fo[n // 2 - edge:n // 2])), np.max(np.abs(Fi[n // 2:n // 2 + edge])))
        tail_ratio = float(tail / scale) if scale > 0 else 0.0
        if tail_ratio < tail_tol or n >= n_max:
            break
        n *= 2
    if tail_ratio >= tail_tol:
        raise ResolutionError(f"Laurent tail {tail_ratio:.2e} above {tail_tol:.0e} at n = {n}")
    pos = ks >= 0
    coeffs = np.empty(len(ks), dtype=complex)
    coeffs[pos] = Fo[ks[pos]] * spec.outer_radius ** (-ks[pos].astype(float))
    coeffs[~pos] = Fi[np.mod(ks[~pos], n)] * spec.inner_radius ** (-ks[~pos].astype(float))
    # exact zeros for modes below the rounding floor keep reported coefficients clean
    floor = 64 * np.finfo(float).eps * scale
    on_boundary = np.abs(np.where(pos, Fo[np.mod(ks, n)], Fi[np.mod(ks, n)]))
    coeffs[on_boundary < floor] = 0.0
    nz = np.nonzero(coeffs)[0]
    if len(nz) == 0:
        return LaurentSeries(0, [0.0], (spec.inner_radius, spec.outer_radius), 0.0, tail_ratio)
    lo, hi = nz[0], nz[-1]
    return LaurentSeries(int(ks[lo]), coeffs[lo:hi + 1], (spec.inner_radius, spec.outer_radius), 0.0, tail_ratio)


# -- Fourier vanishing on the boundary circles ---------------------------

@dataclass(frozen=True)
class FourierVanishingReport:
    """Nonzero Fourier modes of the height on both boundary circles."""

    ks: np.ndarray
    outer_modes: np.ndarray
    inner_modes: np.ndarray
    gap: float
    expected_gap: float

    @property
    def max_mode(self) -> float:
        return float(max(np.max(self.outer_modes), np.max(self.inner_modes)))

    @property
    def gap_residual(self) -> float:
        return abs(self.gap - self.expected_gap)

    def mode(self, k: int, which: str = "outer") -> float:
        table = self.outer_modes if which == "outer" else self.inner_modes
        return float(table[np.nonzero(self.ks == k)[0][0]])


def fourier_vanishing_check(Z_outer, Z_inner, A: float, c1: float, R: float) -> FourierVanishingReport:
    """Check that ``Z`` is constant on both circles with ``Z(R) - Z(1/R) = 2 A c1 ln R``."""
    Zo = np.asarray(Z_outer, dtype=float)
    Zi = np.asarray(Z_inner, dtype=float)
    if Zo.shape != Zi.shape or Zo.ndim != 1:
        raise ParameterError("Z_outer and Z_inner must be 1-d samples of equal length")
    Fo, Fi = fourier_modes(Zo), fourier_modes(Zi)
    n = len(Zo)
    ks = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    nz = ks != 0
    order = np.argsort(ks[nz], kind="stable")
    return FourierVanishingReport(
        ks=ks[nz][order],
        outer_modes=np.abs(Fo[nz])[order],
        inner_modes=np.abs(Fi[nz])[order],
        gap=float(Fo[0].real - Fi[0].real),
        expected_gap=float(2.0 * A * c1 * np.log(R)),
    )


# -- Gauss map recovery ---------------------------------------------------

@dataclass(frozen=True)
class GaussMapRecovery:
    m: int
    c: complex | None
    s1: complex
    off_mode_energy: float
    integrality_defect: float = field(default=0.0)

    @property
    def embeddable(self) -> bool:
        return abs(self.m) == 1


def recover_gauss_map(
    s: LaurentSeries,
    g: Callable | None = None,
    z_ref: complex = 1.0,
    off_mode_tol: float = 1e-8,
    integrality_tol: float = 1e-6,
) -> GaussMapRecovery:
    """Recover ``g = c z^m`` from the Laurent series of ``g / g_z``.

    The series must reduce to ``s_1 z``; then ``m = 1 / s_1`` must be an
    integer and ``c = g(z_ref) / z_ref^m``.
    """
    s1 = s.coefficient(1)
    scale = max(s.max_abs(), 1e-300)
    if abs(s1) <= 1e-10 * scale or abs(s1) < 1e-300:
        raise FlatSurfaceError("g/g_z has no z^1 mode: the surface is flat")
    off = float(np.sum(np.abs(s.coeffs[s.ks != 1]) ** 2))
    if np.sqrt(off) > off_mode_tol * max(abs(s1), 1.0):
        raise InconsistencyError(f"g/g_z has off-mode energy {off:.3e}; not of the form c1 z")
    inv = 1.0 / s1
    m = int(np.round(inv.real))
    defect = float(abs(inv - m))
    if m == 0 or defect > integrality_tol:
        raise InconsistencyError(f"1/s_1 = {inv:.8g} is not a nonzero integer")
    c = None
    if g is not None:
        c = complex(np.asarray(g(np.asarray(z_ref, dtype=complex)))) / complex(z_ref) ** m
    return GaussMapRecovery(m, c, complex(s1), off, defect)
