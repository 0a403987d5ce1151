"""Running the classifier on surfaces that should and should not pass.

Run: python3 demos/04_classification.py
"""
import numpy as np
from scipy.spatial.transform import Rotation

from minann import (
    AnnulusSpec,
    SurfaceGrid,
    WeierstrassData,
    catenoid_surface,
    classify,
    integrate_immersion,
    make_grid,
    solve_catenoid_params,
)

p = solve_catenoid_params()
cat = catenoid_surface(p, 32, 128)


def show(name, rep):
    extra = f"m={rep.m} |c|={rep.l:.6f} distance={rep.distance:.1e}" if rep.m is not None else rep.message
    print(f"{name:<32} {rep.verdict:<18} {extra}")


show("analytic catenoid", classify(cat))
show("random rotation", classify(cat.transformed(Rotation.random(random_state=7).as_matrix())))
show("z -> 1/conj(z)", classify(cat.inverted()))
show("sampled, 8th-order stencils", classify(cat.as_numeric(8)))

_, th = cat.grid.mesh()
noisy = SurfaceGrid.numeric(cat.grid, cat.values * (1 + 1e-3 * np.cos(th - 0.4))[..., None], 8)
show("1e-3 smooth noise, tol 1e-2", classify(noisy, tol=1e-2))

double = integrate_immersion(WeierstrassData.monomial(1.0, 2, 4 * p.a), make_grid(AnnulusSpec(np.sqrt(p.r2)), 32, 128))
show("double cover g = z^2", classify(double))

g = make_grid(AnnulusSpec(2.0), 16, 64)
z = g.nodes() / 2.0
show("flat annulus", classify(SurfaceGrid.numeric(g, np.stack([z.real, z.imag, 0 * z.real], -1), 8)))
