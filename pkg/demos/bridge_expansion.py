"""
The Brownian-bridge route to the triple integral
================================================

The triple Stratonovich integral can also be expanded through the
Karhunen-Loeve coefficients of the Brownian bridge.  Written in terms of the
same trigonometric zeta's, the truncated expansion is a trilinear form whose
exact mean-square error follows from the projection identity.  Its error
levels off instead of vanishing, while the Fourier expansion keeps
improving.
"""

from stochexp import closed_form_error
from stochexp.errors import milstein_triple_error

for q in (1, 2, 3, 5):
    print(f"q = {q}: bridge expansion {milstein_triple_error(q):.4f}"
          f"   Fourier expansion {closed_form_error('e101_100', q=q):.4f}")
