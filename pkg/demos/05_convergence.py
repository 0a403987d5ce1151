"""How the finite-difference residuals shrink under radial refinement.

Run: python3 demos/05_convergence.py

Conformality and harmonicity follow the stencil order until rounding takes
over.  The Gauss residual differentiates ``phi = -ln(lambda)/2`` twice
more, so row-to-row stencil error near the rims is amplified by ``h^-2``:
it converges at second order for every stencil, and the eighth-order rows
reach their rounding floor (about ``eps / h^2``) by ``n_r = 64``.
"""
import numpy as np

from minann import conformality_residual, catenoid_surface, gauss_equation_residual, harmonicity_residual, solve_catenoid_params

p = solve_catenoid_params()
ns = [16, 32, 64, 128, 256]

for order in (2, 4, 8):
    print(f"radial order {order}")
    prev = None
    for n in ns:
        s = catenoid_surface(p, n, 64).as_numeric(order)
        e = np.array([conformality_residual(s), harmonicity_residual(s), gauss_equation_residual(s, p.a)])
        rate = "" if prev is None else "  observed order " + " ".join(
            f"{x:5.2f}" for x in np.log(prev / e) / np.log((n - 1) / (n // 2 - 1)))
        print(f"  n_r={n:4d}  conf {e[0]:.2e}  harm {e[1]:.2e}  gauss {e[2]:.2e}{rate}")
        prev = e
