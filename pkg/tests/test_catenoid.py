import numpy as np
import pytest

from minann.catenoid import catenoid_forms, catenoid_immersion, catenoid_partials, solve_catenoid_params
from minann.errors import DomainError, ParameterError

# 30-digit reference values (mpmath findroot on t tanh t = 1)
T_REF = 1.19967864025773383391636984864
R2_REF = 3.31905014223729720342271370056
A_REF = 0.460485088250133910858988346805


def bisect(f, lo, hi, n=200):
    flo = f(lo)
    for _ in range(n):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_matches_frozen_reference(params):
    assert abs(params.t - T_REF) < 1e-14
    assert abs(params.r2 - R2_REF) < 1e-13
    assert abs(params.a - A_REF) < 1e-14
    assert params.A == params.a


def test_matches_bisection_on_r2_form(params):
    r2 = bisect(lambda r: r * r + 1 - (r * r - 1) * np.log(r), 2.0, 5.0)
    assert abs(params.r2 - r2) < 1e-12
    a = 2 * r2 / ((r2**2 + 1) * np.log(r2))
    assert abs(params.a - a) < 1e-12


def test_derived_identities(params):
    t, a = params.t, params.a
    assert abs(a * a * (np.cosh(t) ** 2 + t * t) - 1) < 1e-14
    assert abs(a - 1 / (t * np.cosh(t))) < 1e-15
    assert params.residual < 1e-12
    assert abs(params.r2 - np.exp(t)) < 1e-15


def test_bad_tolerance():
    for tol in (0.0, -1.0, 1e-3):
        with pytest.raises(ParameterError):
            solve_catenoid_params(tol)


def test_boundary_circles_on_sphere(params):
    for r in (params.r1, params.r2):
        z = r * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        U = catenoid_immersion(params, z)
        assert np.allclose(np.linalg.norm(U, axis=-1), 1.0, atol=1e-14)


def test_immersion_outside_annulus(params):
    with pytest.raises(DomainError):
        catenoid_immersion(params, 4.0)
    with pytest.raises(DomainError):
        catenoid_forms(params, 0.1)


def test_partials_match_finite_differences(params):
    r, th, h = 1.7, 0.4, 1e-5
    p = catenoid_partials(params, r, th)

    def U(r, th):
        return catenoid_partials(params, r, th).U

    assert np.allclose(p.U_r, (U(r + h, th) - U(r - h, th)) / (2 * h), atol=1e-9)
    assert np.allclose(p.U_theta, (U(r, th + h) - U(r, th - h)) / (2 * h), atol=1e-9)
    assert np.allclose(p.U_rr, (U(r + h, th) - 2 * U(r, th) + U(r - h, th)) / h**2, atol=1e-5)
    assert np.allclose(p.U_thetatheta, (U(r, th + h) - 2 * U(r, th) + U(r, th - h)) / h**2, atol=1e-5)


def test_forms_closed_form(params):
    f = catenoid_forms(params, np.array([params.r1, 1.0, params.r2]))
    assert np.allclose(f.N, params.a)
    assert np.allclose(f.L, -params.a / np.array([params.r1, 1.0, params.r2]) ** 2)
    assert np.allclose(f.E * f.N + f.G * f.L, 0, atol=1e-15)
    assert np.allclose(np.linalg.norm(f.n, axis=-1), 1.0)
