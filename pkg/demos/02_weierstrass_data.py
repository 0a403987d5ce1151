"""From Weierstrass data to a surface, and when that fails.

Run: python3 demos/02_weierstrass_data.py [out_prefix]
"""
import sys

import numpy as np

from minann import (
    AnnulusSpec,
    LaurentSeries,
    WeierstrassData,
    catenoid_immersion,
    emit_plot_data,
    integrate_immersion,
    make_grid,
    path_integral,
    periods,
    solve_catenoid_params,
)
from minann.errors import RepresentabilityError

p = solve_catenoid_params()

# g = -z with A = a reproduces the closed form exactly; g = z is the same
# surface turned half a revolution about the Z axis.
for c in (-1.0, 1.0):
    d = WeierstrassData.monomial(c, 1, p.a)
    s = integrate_immersion(d, make_grid(p.spec, 32, 128))
    ref = catenoid_immersion(p, s.grid.nodes())
    print(f"g = {c:+.0f} z: max |U - catenoid| = {np.max(np.abs(s.values - ref)):.2e}, "
          f"after X,Y -> -X,-Y: {np.max(np.abs(s.values * [-1, -1, 1] - ref)):.2e}")

d = WeierstrassData.monomial(1.0, 1, p.a)
print("\nperiods of (Phi_1, Phi_2, Phi_3):", np.round(periods(d).values, 12))
z0, z1 = 0.5, 2.5 * np.exp(2j)
print("two paths:", path_integral(d, z0, z1, "radial"), path_integral(d, z0, z1, "angular"))

# A shifted Gauss map leaves a real period: no single-valued surface exists.
bad = WeierstrassData(LaurentSeries(0, [0.3, 1.0]), 1.0)
print("\ng = z + 0.3 periods:", np.round(periods(bad).values, 6))
try:
    integrate_immersion(bad, make_grid(AnnulusSpec(2.0), 16, 64))
except RepresentabilityError as exc:
    print("rejected:", exc)

if len(sys.argv) > 1:
    csv_path, obj_path = emit_plot_data(integrate_immersion(d, make_grid(p.spec, 24, 128)), sys.argv[1])
    print(f"\nwrote {csv_path} and {obj_path}")
