"""The classical identity T_n^2 + (1 - x^2) U_{n-1}^2 = 1, checked exactly.

Everything here runs over arbitrary-precision rationals: the residual is a
polynomial whose coefficients must all be the integer zero, not merely small.
"""

from equipell import chebyshev, chebyshev_pell_identity

print("order   terms in T_n   largest T_n coefficient   residual")
for order in (1, 2, 3, 5, 10, 20, 35, 50):
    t_n = chebyshev("first", order)
    residual = chebyshev_pell_identity(order)
    largest = int(max(abs(c) for c in t_n.terms.values()))
    print(
        f"{order:5d}   {len(t_n.terms):12d}   {largest:23d}"
        f"   {'0 (exact)' if residual.is_zero() else residual.max_coeff()}"
    )

print()
print("T_5  =", chebyshev("first", 5))
print("U_4  =", chebyshev("second", 4))
print("sum of squares with weight (1 - x^2) collapses to the constant 1")
