"""Extension test: does the order-(t+1) optimum restrict to the order-t one?

Finite convergence of the hierarchy shows up as near-zero distances between
consecutive optima.  The disc passes; the quartic TV screen visibly fails;
the two-ellipsoid intersection sits near the edge, and its printed optimum in
the literature (0.00999961) differs from the exact stationarity value 0.1 by
an order of magnitude, a known artifact of a loosely converged solver.
"""

from equipell import (
    assemble_instance,
    builtin_set,
    extension_sweep,
    feasible_start,
    solve_primal,
)

for name, lo, hi in (("ball2d", 1, 3), ("tvscreen", 2, 3), ("ellipsoids2", 1, 3)):
    table = extension_sweep(builtin_set(name), lo, hi)
    print(f"--- {name}")
    for t_low, t_high, distance, verdict in table.distances:
        print(f"  phi*_{2 * t_high} vs phi*_{2 * t_low}: distance {distance:.3e}  -> {verdict}")
    print()

genset = builtin_set("ellipsoids2")
report = solve_primal(assemble_instance(genset, 1), feasible_start(genset, 1))
a = float(report.phi.value((2, 0)))
print(f"ellipsoids2 second moment at t=1: {a:.12f}")
print("stationarity of -2 log a - 2 log(1 - 5a) gives a = 1/10 exactly;")
print(f"the often-quoted 0.00999961 is off by 10x (|diff| = {abs(a - 0.00999961):.4f}).")
