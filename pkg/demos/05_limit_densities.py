# Limiting two-walker densities, their CDF, and the plane-walk eigensystem.
import numpy as np

from coinwalk import bell_state
from coinwalk.asymptotics import (
    EDGE,
    cdf_by_quadrature,
    density_coefficients,
    joint_density,
    plane_eigensystem,
    plane_propagator,
    ps_entangled,
)

for name in ("psi+", "psi-", "phi+", "phi-"):
    co = density_coefficients(bell_state(name))
    # both left: F(0, 0); both right: 1 - F(E, 0) - F(0, E) + F(0, 0)
    f00 = cdf_by_quadrature(0.0, 0.0, co)
    fe0 = cdf_by_quadrature(EDGE, 0.0, co)
    f0e = cdf_by_quadrature(0.0, EDGE, co)
    same = 1.0 - fe0 - f0e + 2.0 * f00
    print(f"{name}: C = {tuple(round(c, 3) + 0.0 for c in co)}  same side {same:.6f}  closed form {ps_entangled(bell_state(name)):.6f}")

# The density on a coarse grid: bracket times edge kernels, zero outside.
g = np.linspace(-0.65, 0.65, 7)
X1, X2 = np.meshgrid(g, g, indexing="ij")
np.set_printoptions(precision=2, suppress=True)
print(joint_density(X1, X2, density_coefficients(bell_state("phi+"))))

# Four eigenpairs per (k1, k2); residuals stay at rounding level.
k = np.linspace(-np.pi, np.pi, 9)
worst = max(
    np.linalg.norm(plane_propagator(a, b) @ v - lam * v)
    for a in k
    for b in k
    for lam, v in plane_eigensystem(a, b)
)
print("largest eigen-residual:", worst)
