"""Fourier coefficients of the simplex kernel K(t_1, ..., t_k).

The kernel is ``prod_l psi_l(t_l)`` on ``t_1 < ... < t_k`` and zero elsewhere,
with polynomial weights ``psi_l(tau) = (t - tau)**l_l``.  Coefficients

    C[j_1, ..., j_k] = int K(t_1..t_k) prod_l phi_{j_l}(t_l) dt_1 ... dt_k

are computed once on [0, 1] by nested Gauss-Legendre quadrature and rescaled
to any interval: on [t, T] they pick up the factor ``(T - t)**(k/2 + sum l)``
(the sign ``(-1)**sum l`` is carried by the unit-interval weights ``(-x)**l``).
"""

from dataclasses import dataclass, field
from fractions import Fraction
import functools
import io
import math
import threading

import numpy as np

from .basis import UNIT, BasisKind, Interval, as_kind, unit_basis_matrix

MAX_K = 4
MAX_EXPONENT = 4
# Per-axis order limits by multiplicity.
ORDER_LIMITS = {1: 10_000, 2: 10_000, 3: 200, 4: 50}
# Mixed-order k=3 tables are admitted up to this many coefficients.
MAX_ENTRIES_K3 = 405 * 205 * 205


class CapacityError(ValueError):
    """Requested table exceeds the resource guard."""


@dataclass(frozen=True)
class WeightedKernel:
    exponents: tuple
    iv: Interval = UNIT

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if not 1 <= len(exps) <= MAX_K:
            raise ValueError(f"multiplicity must be in 1..{MAX_K}, got {len(exps)}")
        if any(e < 0 or e > MAX_EXPONENT for e in exps):
            raise ValueError(f"weight exponents must be in 0..{MAX_EXPONENT}")

    @property
    def k(self):
        return len(self.exponents)

    @property
    def scale(self):
        """Factor mapping unit-interval coefficients to ``iv``."""
        return self.iv.length ** (0.5 * self.k + sum(self.exponents))

    def on(self, iv):
        return WeightedKernel(self.exponents, iv)


@dataclass(frozen=True)
class CoefficientTable:
    kind: BasisKind
    kernel: WeightedKernel
    orders: tuple
    values: np.ndarray = field(repr=False)

    @property
    def k(self):
        return self.kernel.k

    @property
    def iv(self):
        return self.kernel.iv

    def __getitem__(self, index):
        return self.values[index]

    def to_csv(self, out=None):
        """Row-major dump with header ``j1,...,jk,C``; returns the text if ``out`` is None."""
        buf = io.StringIO() if out is None else out
        buf.write(",".join([f"j{l + 1}" for l in range(self.k)] + ["C"]) + "\n")
        for index in np.ndindex(*self.values.shape):
            row = [str(j) for j in index] + [f"{self.values[index]:.17g}"]
            buf.write(",".join(row) + "\n")
        if out is None:
            return buf.getvalue()
        return None


# --- quadrature machinery ---------------------------------------------------

@functools.lru_cache(maxsize=32)
def _unit_gauss(n):
    y, w = np.polynomial.legendre.leggauss(n)
    x, w = 0.5 * (y + 1.0), 0.5 * w
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@functools.lru_cache(maxsize=32)
def _unit_cumulative(n):
    """Matrix Q with ``Q @ f`` ~ int_0^{x_m} f at each node; exact below degree n."""
    y, w = np.polynomial.legendre.leggauss(n)
    V = np.polynomial.legendre.legvander(y, n)  # P_0..P_n at nodes
    deg = np.arange(n)
    to_coef = ((2 * deg + 1) / 2.0)[:, None] * (V[:, :n].T * w)
    anti = np.empty((n, n))
    anti[:, 0] = y + 1.0
    anti[:, 1:] = (V[:, 2:n + 1] - V[:, 0:n - 1]) / (2 * deg[1:] + 1)
    Q = 0.5 * (anti @ to_coef)
    Q.setflags(write=False)
    return Q


def node_count(kind, exponents, orders):
    """Quadrature size per dimension resolving every integrand exactly or spectrally."""
    kind = as_kind(kind)
    base = max(64, 2 * max(orders) + 10)
    deg = sum(exponents) + len(exponents)
    if kind is BasisKind.LEGENDRE:
        total = sum(orders) + deg
        return max(base, total // 2 + 8, max(orders) + max(exponents) + 8,
                   (orders[-1] + orders[-2] + 16 if len(orders) == 4 else 0))
    cycles = [(p + 1) // 2 for p in orders]
    cum = max(cycles)
    if len(cycles) == 4:
        cum = max(cum, cycles[2] + cycles[3])
    return int(max(base,
                   math.ceil(math.pi * cum) + 40 + deg,
                   math.ceil(0.5 * math.pi * sum(cycles)) + 40 + deg))


def _weighted_basis(kind, p, exponent, x):
    return unit_basis_matrix(kind, p, x) * (-x) ** exponent


def _unit_table(kind, exponents, orders, n=None):
    n = n or node_count(kind, exponents, orders)
    x, _ = _unit_gauss(n)
    rows = [unit_basis_matrix(kind, p, x) for p in orders]
    return nested_simplex_integrals(rows, exponents, n)


def nested_simplex_integrals(rows, exponents, n):
    """Tensor of int_{0<x_1<...<x_k<1} prod_l (-x_l)**e_l f_l(x_l) over all row choices.

    ``rows[l]`` holds function values of axis-l candidates at the n-point
    unit Gauss-Legendre nodes, shape ``(count_l, n)``.
    """
    x, w = _unit_gauss(n)
    F = [np.asarray(r, dtype=float) * (-x) ** e for r, e in zip(rows, exponents)]
    k = len(F)
    if k == 1:
        return F[0] @ w
    Q = _unit_cumulative(n)
    G1 = F[0] @ Q.T  # int_0^x of axis-1 functions
    if k == 2:
        return (G1 * w) @ F[1].T
    if k == 3:
        H3 = (F[2] @ w)[:, None] - F[2] @ Q.T  # int_x^1 of axis-3 functions
        return _contract3(G1 * w, F[1], H3)
    H4 = (F[3] @ w)[:, None] - F[3] @ Q.T
    prod = (F[2][:, None, :] * H4[None, :, :]).reshape(-1, n)
    H34 = (prod @ w)[:, None] - prod @ Q.T
    out = _contract3(G1 * w, F[1], H34)
    return out.reshape(F[0].shape[0], F[1].shape[0], F[2].shape[0], F[3].shape[0])


def unit_nodes(n):
    """Nodes of the n-point unit-interval rule used by :func:`nested_simplex_integrals`."""
    return _unit_gauss(n)[0]


def _contract3(A, B, C, budget=4_000_000):
    """out[a, b, c] = sum_m A[a, m] B[b, m] C[c, m], chunked over a."""
    na, n = A.shape
    nb, nc = B.shape[0], C.shape[0]
    out = np.empty((na, nb, nc))
    step = max(1, budget // (nb * n))
    Ct = np.ascontiguousarray(C.T)
    for start in range(0, na, step):
        stop = min(na, start + step)
        block = (A[start:stop, None, :] * B[None, :, :]).reshape(-1, n)
        out[start:stop] = (block @ Ct).reshape(stop - start, nb, nc)
    return out


_cache = {}
_cache_lock = threading.Lock()


def _check_orders(k, orders):
    if len(orders) != k:
        raise ValueError(f"need {k} truncation orders, got {len(orders)}")
    if any(p < 0 for p in orders):
        raise ValueError("truncation orders must be nonnegative")
    if k == 3 and any(p > ORDER_LIMITS[3] for p in orders):
        if math.prod(p + 1 for p in orders) > MAX_ENTRIES_K3 or max(orders) > 2 * ORDER_LIMITS[3]:
            raise CapacityError(f"k=3 table {orders} exceeds the resource guard")
    elif any(p > ORDER_LIMITS[k] for p in orders):
        raise CapacityError(f"orders {orders} exceed limit {ORDER_LIMITS[k]} for k={k}")


def unit_table(kind, exponents, orders):
    """Cached, read-only coefficient tensor on [0, 1]."""
    kind = as_kind(kind)
    key = (kind, tuple(exponents), tuple(orders))
    values = _cache.get(key)
    if values is None:
        values = _unit_table(kind, key[1], key[2])
        values.setflags(write=False)
        with _cache_lock:
            values = _cache.setdefault(key, values)
    return values


def build_table(kind, kernel, orders):
    """All coefficients with 0 <= j_l <= p_l for ``kernel`` on its interval."""
    kind = as_kind(kind)
    if isinstance(orders, int):
        orders = (orders,) * kernel.k
    orders = tuple(int(p) for p in orders)
    _check_orders(kernel.k, orders)
    values = unit_table(kind, kernel.exponents, orders) * kernel.scale
    values.setflags(write=False)
    return CoefficientTable(kind, kernel, orders, values)


def fourier_coefficient(kind, kernel, mi):
    """Single coefficient C for the multi-index ``mi = (j_1, ..., j_k)``."""
    mi = tuple(int(j) for j in mi)
    if len(mi) != kernel.k:
        raise ValueError(f"multi-index {mi} does not match multiplicity {kernel.k}")
    if any(j < 0 for j in mi):
        raise ValueError("basis indices must be nonnegative")
    # A table of the exact orders is cheaper than it looks: its cache is shared.
    table = build_table(kind, kernel, mi)
    return float(table.values[mi])


def kernel_norm_sq(kernel):
    """I_k = int K^2, by iterated power-rule integration over the simplex."""
    coef, power = Fraction(1), 0
    for e in kernel.exponents:
        power += 2 * e
        coef /= power + 1
        power += 1
    return float(coef) * kernel.iv.length ** (kernel.k + 2 * sum(kernel.exponents))


def parseval_partial(table):
    """Sum of squared coefficients in the table."""
    return float(np.sum(np.square(table.values)))


def deficit(table):
    """Parseval deficit I_k - sum C^2 (clamped at zero)."""
    return max(0.0, kernel_norm_sq(table.kernel) - parseval_partial(table))
