"""
Mean-square error series for the trigonometric system
======================================================

Closed-form errors of the truncated triple integral and the weighted double
integrals, together with the two double-series identities behind them.
The same numbers are produced by ``stochexp tables``.
"""

from stochexp import closed_form_error, identity_residual
from stochexp.errors import approximation_error

qs = (1, 10, 100, 1000, 10000)

print("triple integral, error / (T - t)^3")
for q in qs:
    print(f"  q = {q:5d}   {closed_form_error('e101_100', q=q):.4e}")

print("weighted double integrals, 4 error / (T - t)^4")
for q in qs:
    print(f"  q = {q:5d}   {4 * closed_form_error('e101_101', q=q):.4e}"
          f"   {4 * closed_form_error('edaug', q=q):.4e}")

print("identity residuals")
for q in qs:
    print(f"  q = {q:5d}   {identity_residual('pi4_48', q):.4e}"
          f"   {identity_residual('ninepi4_80', q):.4e}")

###############################################################################
# The closed forms are the exact errors of the printed approximations: the
# projection identity applied to their coefficients gives the same values.
for q in (1, 10):
    print(f"q = {q}: closed form {closed_form_error('e101_100', q=q):.12f}"
          f"  projection {approximation_error('I000', q):.12f}")
