"""Boundary curves of the critical catenoid and the local relations of g.

Run: python3 demos/03_boundary_geometry.py
"""
import numpy as np

from minann import (
    BoundaryCurve,
    WeierstrassData,
    antipodality_check,
    boundary_relations_residual,
    catenoid_surface,
    fit_plane_circle,
    free_boundary_residual,
    local_expansion,
    solve_catenoid_params,
    torsion_profile,
)

p = solve_catenoid_params()
s = catenoid_surface(p, 32, 128)

fb = free_boundary_residual(s)
print(f"|U| - 1 on the rims: {fb.sphere_residual:.1e}; U_r parallel to U: {fb.orthogonality_residual:.1e}")

for which in ("outer", "inner"):
    c = BoundaryCurve.from_surface(s, which)
    fit = fit_plane_circle(c)
    print(f"{which}: max|tau| {torsion_profile(c).max_abs:.1e}, radius {fit.radius:.10f}, "
          f"centre {np.round(fit.center, 10)}, radius^2 + |centre|^2 = {fit.radius**2 + fit.center @ fit.center:.14f}")
print(f"antipodality |oint U ds + oint U ds| = {antipodality_check(s):.1e}")

# Taylor data of the normalized Gauss map at the boundary point z0 = r2.
e = local_expansion(WeierstrassData.monomial(-1.0, 1, p.a), np.log(p.r2))
print("\na_0..a_4 / R:", np.round((e.a / p.r2).real, 12), " Psi =", round(e.Psi.real, 12))
rel = boundary_relations_residual(e, p.a)
print("relation residuals:", {k: f"{v:.1e}" for k, v in rel.as_dict().items()})
print(f"A recovered from the linear relation: {rel.A_from_relation:.15f} (a = {p.a:.15f})")

# A wrong height constant breaks the relations at first order.
print("with A = 1.1 a:", {k: f"{v:.1e}" for k, v in boundary_relations_residual(e, 1.1 * p.a).as_dict().items()})
