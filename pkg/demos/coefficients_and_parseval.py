"""
Fourier coefficients of the simplex kernel
==========================================

The double integral of a Wiener process over t < t1 < t2 < T is driven by
the kernel K(t1, t2) = 1{t1 < t2}.  Its multiple Fourier coefficients in the
Legendre and trigonometric systems decide how fast a truncated expansion
converges.  This script prints a few of them and the Parseval deficit.
"""

import numpy as np

from stochexp import BasisKind, Interval, WeightedKernel, build_table
from stochexp.kernel_coeffs import deficit, kernel_norm_sq

iv = Interval(0.0, 1.0)
kernel = WeightedKernel((0, 0), iv)

###############################################################################
# Legendre: only C_00 and the first off-diagonals are nonzero.
leg = build_table(BasisKind.LEGENDRE, kernel, 4)
np.set_printoptions(precision=4, suppress=True)
print("Legendre coefficients, p = 4")
print(leg.values)

###############################################################################
# Trigonometric: the sin/cos pairs couple antisymmetrically.
trig = build_table(BasisKind.TRIG, kernel, 4)
print("trigonometric coefficients, p = 4")
print(trig.values)

###############################################################################
# How much of ||K||^2 = 1/2 the box j1, j2 <= p captures.
print("I_2 =", kernel_norm_sq(kernel))
for p in (2, 8, 32, 128):
    print(f"p = {p:4d}   Legendre deficit {deficit(build_table(BasisKind.LEGENDRE, kernel, p)):.3e}"
          f"   trig deficit {deficit(build_table(BasisKind.TRIG, kernel, p)):.3e}")
