import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from minann.analysis import conformality_residual, estimate_hopf_constant, harmonicity_residual, minimality_residual
from minann.catenoid import catenoid_immersion, catenoid_surface
from minann.domain import AnnulusSpec, make_grid
from minann.errors import DataError, ParameterError, RepresentabilityError
from minann.spectral import LaurentSeries
from minann.weierstrass import (
    ClosedForm,
    WeierstrassData,
    hopf_identity,
    integrate_immersion,
    laplacian_phi,
    metric_lambda,
    path_integral,
    periods,
    weierstrass_surface,
)

HALF_TURN_Z = np.diag([-1.0, -1.0, 1.0])


def quad_periods(d, rho=1.0):
    """Independent oracle: adaptive quadrature of Phi(z) i z over theta."""
    out = []
    for i in range(3):
        def part(th, fn):
            z = rho * np.exp(1j * th)
            return fn(d.integrands(z)[i] * 1j * z)
        re = quad(part, 0, 2 * np.pi, args=(np.real,), epsabs=1e-13, limit=200)[0]
        im = quad(part, 0, 2 * np.pi, args=(np.imag,), epsabs=1e-13, limit=200)[0]
        out.append(re + 1j * im)
    return np.array(out)


def test_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        WeierstrassData.monomial(1.0, 1, 0.0)
    with pytest.raises(ParameterError):
        WeierstrassData.monomial(1.0, 1, 1.0, np.nan)


def test_constant_gauss_map_has_no_f():
    d = WeierstrassData(LaurentSeries(0, [2.0]), 1.0)
    with pytest.raises(DataError):
        d.f(1.0)


def test_f_formula():
    d = WeierstrassData.monomial(2.0, 3, 0.7, 0.2)
    z = 1.3 * np.exp(0.4j)
    assert d.f(z) == pytest.approx(0.35 * np.exp(0.2j) / (6 * z**2 * z**2))


@pytest.mark.parametrize("g", [LaurentSeries(-1, [0.3, 0.0, 1.0, 0.2j]), LaurentSeries.monomial(1.5 - 1j, -2)])
def test_hopf_identity(g):
    d = WeierstrassData(g, 0.8, 0.5)
    z = np.exp(np.linspace(-0.5, 0.5, 7))[:, None] * np.exp(1j * np.linspace(0, 6, 11))[None, :]
    assert np.max(np.abs(hopf_identity(d, z) - 0.4)) < 1e-15


def test_closed_form_matches_series():
    a = WeierstrassData(ClosedForm(lambda z: z + 0.3, lambda z: np.ones_like(z)), 1.0)
    b = WeierstrassData(LaurentSeries(0, [0.3, 1.0]), 1.0)
    z = np.array([0.7 + 0.2j, -1.1j])
    assert np.allclose(a.integrands(z), b.integrands(z), atol=1e-15)


def test_laplacian_phi_matches_finite_difference():
    d = WeierstrassData(LaurentSeries(-1, [0.2, 0.0, 1.0, 0.1]), 1.0)
    x, y, h = 0.9, 0.4, 1e-3

    def phi(x, y):
        return -0.5 * np.log(metric_lambda(d, x + 1j * y))

    fd = (phi(x + h, y) + phi(x - h, y) + phi(x, y + h) + phi(x, y - h) - 4 * phi(x, y)) / h**2
    assert fd == pytest.approx(float(laplacian_phi(d, x + 1j * y)), rel=1e-5)


def test_periods_of_catenoid_data(params):
    d = WeierstrassData.monomial(1.0, 1, params.a)
    rep = periods(d)
    assert np.max(np.abs(rep.real_parts)) < 1e-14
    assert rep.representable
    # Phi_3 = A / z, so its period is 2 pi i A
    assert rep.values[2] == pytest.approx(2j * np.pi * params.a, abs=1e-13)


def test_periods_against_quadrature():
    d = WeierstrassData(ClosedForm(lambda z: z + 0.3, lambda z: np.ones_like(z)), 1.0)
    rep = periods(d)
    assert np.allclose(rep.values, quad_periods(d), atol=1e-10)
    assert not rep.representable
    assert np.max(rep.error_estimate) < 1e-12


def test_periods_bad_n():
    d = WeierstrassData.monomial(1.0, 1, 1.0)
    with pytest.raises(ParameterError):
        periods(d, n=48)


def test_not_representable_raises():
    d = WeierstrassData(LaurentSeries(0, [0.3, 1.0]), 1.0)
    with pytest.raises(RepresentabilityError):
        integrate_immersion(d, make_grid(AnnulusSpec(2.0), 8, 32))


def test_g_minus_z_is_the_catenoid(params):
    d = WeierstrassData.monomial(-1.0, 1, params.a)
    s = integrate_immersion(d, make_grid(params.spec, 32, 128))
    ref = catenoid_surface(params, 32, 128)
    assert np.max(np.abs(s.values - ref.values)) < 1e-13
    assert np.max(np.abs(s.partials.U_rr - ref.partials.U_rr)) < 1e-12


def test_g_z_is_rotated_catenoid(params):
    d = WeierstrassData.monomial(1.0, 1, params.a)
    s = integrate_immersion(d, make_grid(params.spec, 32, 128))
    ref = catenoid_immersion(params, s.grid.nodes()) @ HALF_TURN_Z.T
    assert np.max(np.abs(s.values - ref)) < 1e-13


def test_base_point(params):
    d = WeierstrassData.monomial(1.0, 1, params.a)
    surf = weierstrass_surface(d, params.spec, base=(1.0, np.array([1.0, 2.0, 3.0])))
    assert np.allclose(surf.position(1.0), [1.0, 2.0, 3.0], atol=1e-15)


@pytest.mark.parametrize("route", ["radial", "angular"])
def test_path_independence(params, route):
    d = WeierstrassData.monomial(1.0, 1, params.a)
    surf = weierstrass_surface(d, params.spec)
    z0, z1 = 0.5 * np.exp(0.3j), 2.9 * np.exp(2.4j)
    direct = surf.position(z1) - surf.position(z0)
    assert np.max(np.abs(path_integral(d, z0, z1, route) - direct)) < 1e-12


def test_path_integral_route_check():
    d = WeierstrassData.monomial(1.0, 1, 1.0)
    with pytest.raises(ParameterError):
        path_integral(d, 1.0, 2.0, "spiral")


def test_integrated_surface_is_minimal():
    d = WeierstrassData(LaurentSeries(1, [1.0, 0.0, 0.1]), 0.5)
    spec = AnnulusSpec(1.5)
    d.validate(spec)
    rep = periods(d, rho=spec.core_radius)
    assert rep.representable
    s = integrate_immersion(d, make_grid(spec, 16, 64))
    assert conformality_residual(s) < 1e-12
    assert harmonicity_residual(s) < 1e-12
    assert minimality_residual(s) < 1e-12
    value, spread = estimate_hopf_constant(s)
    assert abs(value - 4 * 0.5**2) < 1e-11 and spread < 1e-9


@settings(max_examples=25, deadline=None)
@given(
    c=st.complex_numbers(min_magnitude=0.3, max_magnitude=3.0),
    m=st.sampled_from([-3, -2, -1, 1, 2, 3]),
    A=st.floats(0.1, 2.0),
    theta0=st.floats(-np.pi, np.pi),
)
def test_monomial_properties(c, m, A, theta0):
    d = WeierstrassData.monomial(c, m, A, theta0)
    z = np.exp(np.linspace(-0.6, 0.6, 5))[:, None] * np.exp(1j * np.linspace(0, 6, 9))[None, :]
    assert np.max(np.abs(hopf_identity(d, z) - A / 2)) < 1e-13 * max(1, A)
    rep = periods(d, n=128)
    # only Phi_3 = A e^{i theta0} / (m z) carries a residue
    assert np.max(np.abs(rep.values[:2])) < 1e-12 * max(1, abs(c) ** 2, abs(c) ** -2)
    assert rep.values[2] == pytest.approx(2j * np.pi * A * np.exp(1j * theta0) / m, abs=1e-12)
