"""Truncated expansions of iterated Ito and Stratonovich integrals.

Given a coefficient table and Gaussian variates, the Ito approximation is the
multiple sum ``sum C * (prod zeta - corrections)`` with the pairing
corrections ``1{i_a = i_b != 0} 1{j_a = j_b}`` written out for k <= 4; the
Stratonovich approximation is the same sum without corrections.
"""

from dataclasses import dataclass
from itertools import combinations
import math
import warnings

import numpy as np

from .kernel_coeffs import WeightedKernel

ITO = "ito"
STRATONOVICH = "stratonovich"

_LETTERS = "abcd"


class OutsideTheoremWarning(UserWarning):
    """The requested expansion lies outside the hypotheses it was proven under."""


@dataclass(frozen=True)
class TruncatedIntegral:
    value: object  # float or array over trials
    kind: str
    kernel: WeightedKernel
    indices: tuple
    orders: tuple

    def __float__(self):
        return float(self.value)


def zeta_eff(draw, i, j, iv):
    """zeta_j^{(i)}; for the time component i = 0 it is sqrt(T - t) at j = 0, else 0."""
    if i < 0 or i > draw.m:
        raise IndexError(f"component {i} outside 0..{draw.m}")
    if j < 0 or j > draw.p:
        raise IndexError(f"basis index {j} outside 0..{draw.p}")
    if i >= 1:
        return draw.zeta[i - 1, j]
    value = math.sqrt(iv.length) if j == 0 else 0.0
    if draw.batch_shape:
        return np.full(draw.batch_shape, value)
    return value


def zeta_vector(draw, i, p, iv):
    """Array of zeta_0^{(i)}..zeta_p^{(i)} (trial axes trailing)."""
    if p > draw.p:
        raise IndexError(f"draw covers indices up to {draw.p}, need {p}")
    if i >= 1:
        return draw.zeta[i - 1, : p + 1]
    out = np.zeros((p + 1,) + draw.batch_shape)
    out[0] = math.sqrt(iv.length)
    return out


def _check(table, idx, draw):
    idx = tuple(int(i) for i in idx)
    if len(idx) != table.k:
        raise ValueError(f"{len(idx)} component indices for a multiplicity-{table.k} table")
    if table.k > 4:
        raise NotImplementedError("multiplicities above 4 are not supported")
    if any(i < 0 or i > draw.m for i in idx):
        raise IndexError(f"component indices {idx} outside 0..{draw.m}")
    return idx


def _contract(C, zs, pairs=()):
    """sum_j C[j] prod_{free l} zs[l][j_l] with j_a = j_b forced for (a, b) in ``pairs``.

    Paired axes contribute no zeta factor.  Trial axes of ``zs`` are kept.
    """
    letters = list(_LETTERS[: C.ndim])
    sl = [slice(None)] * C.ndim
    paired = set()
    for a, b in pairs:
        letters[b] = letters[a]
        pmin = min(C.shape[a], C.shape[b])
        sl[a] = sl[b] = slice(0, pmin)
        paired.update((a, b))
    C = C[tuple(sl)]
    free = [l for l in range(C.ndim) if l not in paired]
    batched = zs[0].ndim > 1
    trial = "z" if batched else ""
    operands = [C] + [zs[l] for l in free]
    subs = ["".join(letters)] + [letters[l] + trial for l in free]
    out = np.einsum(",".join(subs) + "->" + (trial if free else ""), *operands, optimize=True)
    if batched and not free:
        out = np.broadcast_to(out, zs[0].shape[1:]).copy()
    return out if batched else float(out)


def _ito_corrections(C, zs, idx):
    k = C.ndim
    eq = lambda a, b: idx[a] == idx[b] != 0
    total = 0.0
    for pair in combinations(range(k), 2):
        if eq(*pair):
            total = total - _contract(C, zs, [pair])
    if k == 4:
        for p1, p2 in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            if eq(*p1) and eq(*p2):
                total = total + _contract(C, zs, [p1, p2])
    return total


def _zetas(table, idx, draw):
    return [zeta_vector(draw, i, p, table.iv) for i, p in zip(idx, table.orders)]


def ito_truncated(table, idx, draw):
    """Prelimit Ito approximation of J[psi^(k)] for k = 1..4."""
    idx = _check(table, idx, draw)
    zs = _zetas(table, idx, draw)
    value = _contract(table.values, zs) + _ito_corrections(table.values, zs, idx)
    return TruncatedIntegral(value, ITO, table.kernel, idx, table.orders)


def check_stratonovich(table, idx):
    """Raise if the Stratonovich expansion is not covered by the theorem; warn on i = 0 for k = 2."""
    k = table.k
    ones = all(e == 0 for e in table.kernel.exponents)
    if k in (3, 4) and len(set(table.orders)) != 1:
        if not (k == 3 and ones):
            raise ValueError(f"k={k} Stratonovich expansion needs equal orders p_1 = ... = p_k")
    if k == 3 and 0 in idx and not ones:
        raise ValueError("k=3 Stratonovich expansion with a time component needs psi == 1")
    if k == 4 and not ones:
        raise ValueError("k=4 Stratonovich expansion needs psi == 1")
    if k == 2 and 0 in idx:
        warnings.warn("k=2 Stratonovich expansion with a time component lies outside the "
                      "theorem's stated hypotheses (i_1, i_2 >= 1)", OutsideTheoremWarning)


def stratonovich_truncated(table, idx, draw, support=None):
    """Prelimit Stratonovich approximation: sum C * prod zeta, no corrections.

    ``support`` optionally restricts the sum to a boolean mask over the table.
    """
    idx = _check(table, idx, draw)
    check_stratonovich(table, idx)
    C = table.values if support is None else np.where(support, table.values, 0.0)
    value = _contract(C, _zetas(table, idx, draw))
    return TruncatedIntegral(value, STRATONOVICH, table.kernel, idx, table.orders)
