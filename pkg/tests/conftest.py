import numpy as np
import pytest

from minann.analysis import SurfaceGrid
from minann.catenoid import catenoid_surface, solve_catenoid_params
from minann.domain import AnnulusSpec, make_grid


@pytest.fixture(scope="session")
def params():
    return solve_catenoid_params()


@pytest.fixture(scope="session")
def cat(params):
    return catenoid_surface(params, 64, 256)


@pytest.fixture(scope="session")
def cat_small(params):
    return catenoid_surface(params, 16, 64)


def flat_annulus(R=2.0, n_r=16, n_theta=64, scale=None):
    """Planar annulus ``U = (z / R, 0)``: conformal, harmonic, outer rim on the sphere."""
    g = make_grid(AnnulusSpec(R), n_r, n_theta)
    z = g.nodes() / (R if scale is None else scale)
    return SurfaceGrid.numeric(g, np.stack([z.real, z.imag, np.zeros_like(z.real)], axis=-1), 8)


@pytest.fixture
def flat():
    return flat_annulus()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
