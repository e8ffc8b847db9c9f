"""Expansions of iterated Ito and Stratonovich stochastic integrals.

Multiple Fourier-Legendre and trigonometric series of the simplex kernel,
their truncated stochastic expansions, exact and closed-form mean-square
errors, the Karhunen-Loeve (Brownian bridge) route, and a Monte Carlo
oracle that checks all of it against fine-grid simulation.
"""

from .basis import UNIT, BasisKind, Interval, basis_matrix, eval_phi
from .catalog import CatalogId, eval_catalog
from .errors import (approximation_error, closed_form_error, error_bound,
                     exact_error_theorem3, identity_residual)
from .expansions import ito_truncated, stratonovich_truncated
from .gaussian import GaussianDraw, sample, tail_weights
from .kernel_coeffs import CoefficientTable, WeightedKernel, build_table, fourier_coefficient
from .mc_oracle import ms_error_vs_truth, simulate_iterated

__all__ = [
    "UNIT", "BasisKind", "Interval", "basis_matrix", "eval_phi",
    "CatalogId", "eval_catalog",
    "approximation_error", "closed_form_error", "error_bound", "exact_error_theorem3",
    "identity_residual",
    "ito_truncated", "stratonovich_truncated",
    "GaussianDraw", "sample", "tail_weights",
    "CoefficientTable", "WeightedKernel", "build_table", "fourier_coefficient",
    "ms_error_vs_truth", "simulate_iterated",
]
