"""Orthonormal families, Christoffel polynomials, and density exports.

On the interval the triangular orthonormalization reproduces the scaled
Chebyshev families; for a Gaussian block matrix the reciprocal Christoffel
polynomial is the familiar 1 + x^T S^{-1} x; and any density can be sampled
onto a CSV grid for external plotting.
"""

import math

import numpy as np

from equipell import (
    MomentMatrix,
    MomentSequence,
    builtin_set,
    chebyshev,
    christoffel_inverse_poly,
    localizing_matrix,
    moment_matrix,
    monomial_basis,
    named_model,
    orthonormal_basis,
    pstar_density,
)
from equipell.christoffel import poly_grid_csv

phi = MomentSequence.from_model(named_model("interval"), 8)

print("orthonormal family for the arcsine measure (t = 3):")
family = orthonormal_basis(moment_matrix(phi, 3))
for order, poly in enumerate(family.polys):
    ref = chebyshev("first", order).to_float() * (math.sqrt(2) if order else 1.0)
    err = float((poly - ref).max_coeff())
    print(f"  P_{order} = {poly}   (vs scaled T_{order}: {err:.1e})")

print()
print("orthonormal family for the (1 - x^2)-weighted measure (t = 2):")
import equipell.mvpoly as mv

g = 1 - mv.Poly.variable(1, 0) ** 2
family = orthonormal_basis(localizing_matrix(phi, g, 2))
for order, poly in enumerate(family.polys):
    ref = math.sqrt(2) * chebyshev("second", order).to_float()
    print(f"  P_{order} = {poly}   (vs sqrt(2) U_{order}: {float((poly - ref).max_coeff()):.1e})")

print()
sigma = np.array([[2.0, 0.3], [0.3, 1.0]])
m = np.zeros((3, 3))
m[0, 0] = 1.0
m[1:, 1:] = sigma
lam = christoffel_inverse_poly(MomentMatrix(monomial_basis(2, 1), m))
print("Gaussian block matrix, reciprocal Christoffel polynomial:")
print("  ", lam)
print("   expected 1 + x^T S^{-1} x with S^{-1} =")
print(np.linalg.inv(sigma))

print()
genset = builtin_set("ball2d")
phi2 = MomentSequence.from_model(named_model("ball2d"), 8)
density = pstar_density(genset, phi2, 4)
poly_grid_csv(density.to_float(), ((-1, 1), (-1, 1)), 60, "ball_density_grid.csv")
print("order-4 normalized density on the disc sampled to ball_density_grid.csv")
print("(constant 1 on the equilibrium measure, as the identity predicts)")
