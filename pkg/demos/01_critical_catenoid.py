"""The critical catenoid: constants, forms and the Hopf quartic.

Run: python3 demos/01_critical_catenoid.py
"""
import numpy as np

from minann import (
    catenoid_surface,
    conformality_residual,
    estimate_hopf_constant,
    forms,
    gauss_curvature,
    gauss_equation_residual,
    harmonicity_residual,
    solve_catenoid_params,
)

p = solve_catenoid_params()
print(f"t = ln r2     {p.t:.15f}   (t tanh t - 1 = {p.t * np.tanh(p.t) - 1:.1e})")
print(f"r2            {p.r2:.15f}")
print(f"a             {p.a:.15f}")
print(f"boundary circle radius 1/t = {1 / p.t:.10f}, height a t = {p.a * p.t:.10f}")

# An analytic grid carries the exact partials, so residuals sit at rounding level.
s = catenoid_surface(p, 64, 256)
print(f"\nconformality  {conformality_residual(s):.2e}")
print(f"harmonicity   {harmonicity_residual(s):.2e}")

f = forms(s)
r = s.grid.mesh()[0]
print(f"max |L + a/r^2| = {np.max(np.abs(f.L + p.a / r**2)):.2e}, max |N - a| = {np.max(np.abs(f.N - p.a)):.2e}")

value, spread = estimate_hopf_constant(s)
print(f"\nHopf quartic  {value.real:.12f} (4a^2 = {4 * p.a**2:.12f}), spread {spread:.1e}")
print(f"Gauss equation residual with A = a: {gauss_equation_residual(s, p.a):.1e}")

# An odd number of log-uniform radii puts a node on the waist r = 1.
s_odd = catenoid_surface(p, 65, 64)
K = gauss_curvature(forms(s_odd))
print(f"K on the waist r = {s_odd.grid.radii[32]:.1f}: {K[32, 0]:.6f}  (-1/a^2 = {-1 / p.a**2:.6f})")
print(f"K on the rim:          {K[-1, 0]:.6f}")
