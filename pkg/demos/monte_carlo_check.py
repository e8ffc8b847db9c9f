"""
Checking an error formula by simulation
=======================================

Each trial draws one Wiener path on a fine grid.  The iterated integral is
formed by nested sums, and the expansion is evaluated on zeta's computed
from the same path, so the two are coupled pathwise.  The sample mean of the
squared difference estimates the mean-square error.

A short run is used here; the acceptance suite uses 10^4 trials on a
10^4-step grid.
"""

from stochexp import UNIT, closed_form_error, ms_error_vs_truth
from stochexp.mc_oracle import grid_allowance

trials, grid_N = 2000, 2000
for name, idx, q, formula in (("I00", (1, 2), 3, "e801"), ("I000", (1, 2, 3), 1, "e101_100")):
    est = ms_error_vs_truth(name, idx, q, trials, grid_N, seed=1)
    closed = closed_form_error(formula, q=q)
    tol = 4 * est.stderr + grid_allowance(len(idx), UNIT, grid_N)
    print(f"{name} q={q}: simulated {est.error:.5f} +- {est.stderr:.5f}, formula {closed:.5f}, "
          f"within tolerance: {abs(est.error - closed) <= tol}")
