import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minann.domain import AnnulusSpec
from minann.errors import AnalyticityError, FlatSurfaceError, InconsistencyError, ParameterError, ResolutionError
from minann.spectral import (
    LaurentSeries,
    fourier_vanishing_check,
    laurent_expand,
    laurent_extract,
    recover_gauss_map,
)

SPEC = AnnulusSpec(2.0)
coeff = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


def direct(k_min, coeffs, z):
    return sum(c * z ** (k_min + i) for i, c in enumerate(coeffs))


@settings(max_examples=40, deadline=None)
@given(k_min=st.integers(-6, 3), coeffs=st.lists(coeff, min_size=1, max_size=8))
def test_series_evaluation(k_min, coeffs):
    z = np.array([0.6 + 0.3j, 1.7j, -1.2])
    s = LaurentSeries(k_min, coeffs)
    assert np.allclose(s(z), direct(k_min, coeffs, z), rtol=1e-12, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(k_min=st.integers(-6, 3), coeffs=st.lists(coeff, min_size=1, max_size=8))
def test_laurent_extract_recovers_polynomials(k_min, coeffs):
    p = LaurentSeries(k_min, coeffs)
    s = laurent_extract(p, SPEC, (-12, 12))
    expected = np.array([p.coefficient(k) for k in s.ks])
    assert np.max(np.abs(s.coeffs - expected)) < 1e-13 * max(1.0, p.max_abs())
    assert s.discrepancy < 1e-12 * max(1.0, p.max_abs())


def test_laurent_extract_rejects_non_analytic():
    with pytest.raises(AnalyticityError):
        laurent_extract(lambda z: np.abs(z) ** 2, SPEC)
    s = laurent_extract(lambda z: np.abs(z) ** 2, SPEC, check=False)
    assert s.discrepancy > 0.1


def test_laurent_extract_band_limits():
    with pytest.raises(ResolutionError):
        laurent_extract(lambda z: z, SPEC, (-40, 40), n=64)
    with pytest.raises(ParameterError):
        laurent_extract(lambda z: z, SPEC, (3, 1))


def test_tail_ratio_flags_truncation():
    # 1/(z - 3) is analytic on the annulus but has an infinite series
    s = laurent_extract(lambda z: 1 / (z - 3), SPEC, (-4, 4), check=False)
    assert s.tail_ratio > 1e-3


def test_laurent_expand_resolves_rational_function():
    f = lambda z: 1 / (z - 3) + 0.5 / z**2  # noqa: E731
    s = laurent_expand(f, SPEC)
    z = np.array([0.5, 1.9j, -1.2 + 0.3j])
    assert np.allclose(s(z), f(z), atol=1e-12)
    assert s.coefficient(-2) == pytest.approx(0.5, abs=1e-13)
    assert s.coefficient(0) == pytest.approx(-1 / 3, abs=1e-13)


def test_laurent_expand_gives_up():
    with pytest.raises(ResolutionError):
        laurent_expand(lambda z: 1 / (z - 2.0001), SPEC, n_max=256)


def test_derivative_and_antiderivative():
    s = LaurentSeries(-3, [1.0, 0.5j, 2.0, 0.0, -1.0, 0.25])
    z, h = 1.3 * np.exp(0.7j), 1e-6
    fd = (s(z + h) - s(z - h)) / (2 * h)
    assert s.derivative(z) == pytest.approx(fd, abs=1e-8)
    F = lambda w: s.antiderivative(w)  # noqa: E731
    assert (F(z + h) - F(z - h)) / (2 * h) == pytest.approx(s(z), abs=1e-8)


def test_fourier_vanishing_on_constant_heights(params):
    n = 64
    A, R = params.a, params.r2
    rep = fourier_vanishing_check(np.full(n, A * np.log(R)), np.full(n, -A * np.log(R)), A, 1.0, R)
    assert rep.max_mode < 1e-15
    assert rep.gap_residual < 1e-15
    assert 0 not in rep.ks and len(rep.ks) == n - 1


def test_fourier_vanishing_sees_modes():
    th = 2 * np.pi * np.arange(32) / 32
    rep = fourier_vanishing_check(0.1 * np.cos(2 * th), np.zeros(32), 1.0, 1.0, 2.0)
    assert rep.mode(2) == pytest.approx(0.05)
    assert rep.mode(-2) == pytest.approx(0.05)
    assert rep.mode(2, "inner") == 0
    with pytest.raises(ParameterError):
        fourier_vanishing_check(np.zeros(32), np.zeros(16), 1.0, 1.0, 2.0)


@pytest.mark.parametrize("m", [-3, -1, 1, 2, 5])
def test_recover_monomial(m):
    c = 0.7 - 0.4j
    rec = recover_gauss_map(LaurentSeries(1, [1 / m]), lambda z: c * z**m, z_ref=1.3)
    assert rec.m == m
    assert rec.c == pytest.approx(c, abs=1e-14)
    assert rec.embeddable == (abs(m) == 1)


def test_recover_failures():
    with pytest.raises(FlatSurfaceError):
        recover_gauss_map(LaurentSeries(0, [0.0]))
    with pytest.raises(InconsistencyError):
        recover_gauss_map(LaurentSeries(1, [1 / 1.5]))
    with pytest.raises(InconsistencyError):
        recover_gauss_map(LaurentSeries(0, [0.1, 1.0]))
