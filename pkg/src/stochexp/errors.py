"""Mean-square errors of truncated expansions.

Three kinds of quantity live here:

* the exact error of a box-truncated expansion, from the permutation identity
  for mean-square errors of multiple Fourier sums;
* the exact error of an arbitrary printed closed form (distinct components),
  from the same projection identity with the form's own coefficients;
* the closed-form error series for the trigonometric system and the two
  double-series identities behind them.
"""

from dataclasses import dataclass, field
from itertools import permutations
import math

import numpy as np

from .basis import UNIT, BasisKind, unit_basis_matrix
from .catalog import KERNELS, catalog_coefficients
from .gaussian import from_arrays, tail_weights
from .kernel_coeffs import (WeightedKernel, kernel_norm_sq, nested_simplex_integrals,
                            node_count, unit_nodes)
from .milstein import milstein_triple

PI = math.pi

EXACT = "exact_theorem3"
CLOSED_FORM = "closed_form"
BOUND = "bound"
IDENTITY = "identity_residual"

FORMULAS = ("e801", "e802", "e804", "e805", "e101_100", "e101_101", "e101_102", "edaug")
IDENTITIES = {"pi4_48": PI ** 4 / 48, "ninepi4_80": 9 * PI ** 4 / 80}


class UnsupportedCase(NotImplementedError):
    """The requested index pattern has no exact error formula here."""


@dataclass(frozen=True)
class ErrorReport:
    kind: str
    value: float
    formula_id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.formula_id:
            raise ValueError("formula_id must be nonempty")


# --- exact errors of box truncations ----------------------------------------

def _coupled_permutations(idx):
    """Permutations sigma with idx[sigma[l]] == idx[l] for every l."""
    k = len(idx)
    return [s for s in permutations(range(k)) if all(idx[s[l]] == idx[l] for l in range(k))]


def exact_error_theorem3(table, idx):
    """E = I_k - sum_j C_j * sum_sigma C_{sigma(j)} over index-coupled permutations.

    For pairwise distinct components only the identity survives and the
    error is the Parseval deficit.  ``table`` must have equal orders.
    """
    idx = tuple(int(i) for i in idx)
    if len(idx) != table.k:
        raise ValueError(f"{len(idx)} component indices for a multiplicity-{table.k} table")
    if table.k > 4:
        raise UnsupportedCase("multiplicities above 4 are not supported")
    if any(i < 1 for i in idx):
        raise UnsupportedCase("exact errors need Wiener components i >= 1")
    if len(set(table.orders)) != 1:
        raise UnsupportedCase("exact errors need equal truncation orders")
    C = np.asarray(table.values)
    acc = [float(np.sum(C * np.transpose(C, s))) for s in _coupled_permutations(idx)]
    return kernel_norm_sq(table.kernel) - math.fsum(acc)


def error_bound(table, idx=None):
    """k! (I_k - sum C^2); dominates the exact error for every index pattern."""
    deficit = kernel_norm_sq(table.kernel) - float(np.sum(np.asarray(table.values) ** 2))
    return math.factorial(table.k) * deficit


# --- exact errors of printed closed forms -------------------------------------

def tail_functions(q, x):
    """Unit-interval functions whose Wiener integrals are xi_q and mu_q.

    xi_q = alpha_q^{-1/2} sum_{r>q} zeta_{2r-1}/r and mu_q = beta_q^{-1/2}
    sum_{r>q} zeta_{2r}/r^2; the infinite series are summed in closed form
    (sawtooth and Bernoulli polynomial) and the first q terms removed.
    """
    tw = tail_weights(q)
    x = np.asarray(x, dtype=float)
    r = np.arange(1, q + 1)[:, None]
    saw = PI / 2 * (1 - 2 * x) - np.sum(np.sin(2 * PI * r * x) / r, axis=0)
    bern = PI ** 2 * (x * x - x + 1 / 6) - np.sum(np.cos(2 * PI * r * x) / r ** 2, axis=0)
    return np.stack([math.sqrt(2 / tw.alpha) * saw, math.sqrt(2 / tw.beta) * bern])


def atom_gram(q, top):
    """Gram matrix of the atoms zeta_0..zeta_top, xi_q, mu_q on one component.

    The tail variables are orthogonal to zeta_j for j <= 2q but correlate
    with the higher zeta's they are built from.
    """
    tw = tail_weights(q)
    M = np.eye(top + 3)
    for j in range(2 * q + 1, top + 1):
        r = (j + 1) // 2
        if j % 2:
            M[top + 1, j] = M[j, top + 1] = 1 / (r * math.sqrt(tw.alpha))
        else:
            M[top + 2, j] = M[j, top + 2] = 1 / (r * r * math.sqrt(tw.beta))
    return M


def projection_error(a, exps, q, iv=UNIT):
    """Exact mean-square error of sum_t a_t X_t against J, distinct components.

    ``a`` is a dense tensor whose axis l runs over the atoms
    zeta_0..zeta_{P_l}, xi_q, mu_q of component l.  The error is
    I_k - 2 <a, G> + <a, M a>, with G_t = E[J X_t] the generalized Fourier
    coefficients against the atom functions and M the atom Gram matrix.
    """
    a = np.asarray(a, dtype=float)
    k = len(exps)
    if a.ndim != k:
        raise ValueError("coefficient tensor rank must match the kernel")
    top = [s - 3 for s in a.shape]
    n = node_count(BasisKind.TRIG, exps, tuple(max(t, 0) for t in top))
    x = unit_nodes(n)
    tails = tail_functions(q, x)
    rows = [np.vstack([unit_basis_matrix(BasisKind.TRIG, p, x), tails]) for p in top]
    G = nested_simplex_integrals(rows, exps, n)
    Ma = a
    for l in range(k):
        Ma = np.moveaxis(np.tensordot(atom_gram(q, top[l]), Ma, axes=([1], [l])), 0, l)
    e_unit = kernel_norm_sq(WeightedKernel(exps)) - 2 * float(np.sum(a * G)) + float(np.sum(a * Ma))
    return iv.length ** (k + 2 * sum(exps)) * e_unit


def _dense(coeffs, k):
    top = [0] * k
    for mono in coeffs:
        if len(mono) != k:
            raise UnsupportedCase(f"monomial {mono} is not one atom per component")
        for c, fam, j in mono:
            if fam == "z":
                top[c - 1] = max(top[c - 1], j)
    a = np.zeros([t + 3 for t in top])
    for mono, c in coeffs.items():
        a[tuple({"z": j, "xi": top[l] + 1, "mu": top[l] + 2}[fam]
                for l, (_, fam, j) in enumerate(mono))] += c
    return a


def approximation_error(name, q, iv=UNIT):
    """Exact mean-square error of a printed trigonometric form, distinct components.

    The form's coefficients are read off symbolically and passed to
    :func:`projection_error`.
    """
    exps = KERNELS[name]
    k = len(exps)
    coeffs = catalog_coefficients(name, tuple(range(1, k + 1)), q)
    return projection_error(_dense(coeffs, k), exps, q, iv)


def triple_coefficients(fn, q, top):
    """Coefficient tensor of a trilinear map of three distinct components.

    ``fn(draw)`` must be linear in the variates of each component; it is
    evaluated on one-hot batched draws covering every atom triple.
    """
    size = top + 3
    grid = np.indices((size,) * 3).reshape(3, -1)
    zeta = np.zeros((3, top + 1, grid.shape[1]))
    xi = np.zeros((3, grid.shape[1]))
    mu = np.zeros((3, grid.shape[1]))
    cols = np.arange(grid.shape[1])
    for c in range(3):
        j = grid[c]
        z = j <= top
        zeta[c, j[z], cols[z]] = 1.0
        xi[c, cols[j == top + 1]] = 1.0
        mu[c, cols[j == top + 2]] = 1.0
    draw = from_arrays(zeta, xi, mu, q=q)
    return np.asarray(fn(draw)).reshape((size,) * 3)


def milstein_triple_error(q, iv=UNIT):
    """Exact mean-square error of the bridge-expansion triple integral, distinct components."""
    a = triple_coefficients(lambda dr: milstein_triple(q, 1.0, dr), q, 4 * q)
    return projection_error(a, (0, 0, 0), q, iv)


# --- closed forms -----------------------------------------------------------

def _power_sum(s, q):
    return math.fsum(1.0 / r ** s for r in range(1, q + 1))


def _term_daug1(r, l):
    r2, l2 = r * r, l * l
    return (5 * l2 * l2 + 4 * r2 * r2 - 3 * r2 * l2) / (r2 * l2 * (r2 - l2) ** 2)


def _term_k(k, l):
    k2, l2 = k * k, l * l
    return (l2 + k2) / (k2 * (l2 - k2) ** 2)


def _term_l(k, l):
    k2, l2 = k * k, l * l
    return (k2 + l2) / (l2 * (l2 - k2) ** 2)


def offdiag_sum(term, q):
    """sum_{a != b <= q} term(a, b), accumulated shell by shell in max(a, b).

    Each shell is a vector sum; shells are combined with exactly rounded
    summation, so the result does not depend on blocking.
    """
    shells = []
    for s in range(2, q + 1):
        lo = np.arange(1, s, dtype=float)
        hi = np.full_like(lo, float(s))
        shells.append(float(np.sum(term(hi, lo)) + np.sum(term(lo, hi))))
    return math.fsum(shells)


_DOUBLE = {"daug1": _term_daug1, "k": _term_k, "l": _term_l}


def closed_form_error(formula, iv=UNIT, q=1):
    """Literal value of a closed-form error series at truncation q."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    d = iv.length
    tw = tail_weights(q)
    h2, h4 = _power_sum(2, q), _power_sum(4, q)
    s = lambda key: offdiag_sum(_DOUBLE[key], q)
    if formula == "e801":
        return d ** 2 / (2 * PI ** 2) * tw.alpha
    if formula == "e802":
        return d ** 3 * (tw.alpha / (4 * PI ** 2) + 55 / (32 * PI ** 4) * tw.beta
                         + (IDENTITIES["ninepi4_80"] - s("daug1")) / (4 * PI ** 4))
    if formula == "e804":
        return d ** 4 * (tw.alpha / (8 * PI ** 2) + 5 / (32 * PI ** 4) * tw.beta
                         + (IDENTITIES["pi4_48"] - s("k")) / (4 * PI ** 4))
    if formula == "e805":
        return d ** 4 * (tw.alpha / (8 * PI ** 2) + 5 / (32 * PI ** 4) * tw.beta
                         + (IDENTITIES["pi4_48"] - s("l")) / (4 * PI ** 4))
    if formula == "e101_100":
        return d ** 3 * (4 / 45 - h2 / (4 * PI ** 2) - 55 / (32 * PI ** 4) * h4
                         - s("daug1") / (4 * PI ** 4))
    if formula == "e101_101":
        return d ** 4 / 4 * (1 / 9 - h2 / (2 * PI ** 2) - 5 / (8 * PI ** 4) * h4 - s("l") / PI ** 4)
    if formula == "e101_102":
        return d ** 4 / 4 * (1 / 9 - h2 / (2 * PI ** 2) - 5 / (8 * PI ** 4) * h4 - s("k") / PI ** 4)
    if formula == "edaug":
        return d ** 4 / 4 * (17 / 240 - h2 / (3 * PI ** 2) - 2 / PI ** 4 * h4
                             + h2 * h2 / PI ** 4 - s("k") / PI ** 4)
    raise ValueError(f"unknown closed form {formula!r}; expected one of {FORMULAS}")


def identity_partial_sum(which, q):
    return offdiag_sum(_term_k if which == "pi4_48" else _term_daug1, q)


def identity_residual(which, q):
    """|partial double sum up to q - its limit|."""
    if which not in IDENTITIES:
        raise ValueError(f"unknown identity {which!r}")
    return abs(identity_partial_sum(which, q) - IDENTITIES[which])


# Catalog entries paired with the closed form of their distinct-component error.
CLOSED_FORM_OF = {"I00": "e801", "I10": "e101_101", "I01": "e101_102", "I000": "e101_100"}
