"""Closed-form truncated expansions of specific iterated Stratonovich integrals.

Notation: ``I<l_1..l_k>`` is the integral with weights ``(t - tau)**l`` against
Wiener components; ``J<lambda_1..lambda_k>`` allows time components (i = 0).
Trigonometric forms carry the tail variables xi_q, mu_q exactly where the
displays carry them; ``tails=False`` zeroes them.

Every formula is written out term by term; no algebraic simplification.
"""

from dataclasses import dataclass
import math

import numpy as np

from .basis import UNIT, BasisKind, as_kind
from .expansions import zeta_eff
from .gaussian import tail_weights
from .kernel_coeffs import WeightedKernel, build_table

SQ2 = math.sqrt(2.0)
PI = math.pi

# name -> (arity, positions that must be the time component 0, bases)
CATALOG = {
    "I0": (1, (), ("legendre", "trig")),
    "I1": (1, (), ("legendre", "trig")),
    "I2": (1, (), ("legendre", "trig")),
    "I00": (2, (), ("legendre", "trig")),
    "I10": (2, (), ("trig",)),
    "I01": (2, (), ("trig",)),
    "I000": (3, (), ("trig",)),
    "J10_i0": (2, (1,), ("trig",)),
    "J01_0i": (2, (0,), ("trig",)),
    "J001": (3, (0, 1), ("trig",)),
    "J010": (3, (0, 2), ("trig",)),
    "J100": (3, (1, 2), ("trig",)),
    "J011_0ii": (3, (0,), ("trig",)),
    "J110_ii0": (3, (2,), ("trig",)),
    "J101_i0i": (3, (1,), ("trig",)),
}

# Weight exponents of the kernel each Wiener-only entry expands.
KERNELS = {"I0": (0,), "I1": (1,), "I2": (2,), "I00": (0, 0), "I10": (1, 0),
           "I01": (0, 1), "I000": (0, 0, 0)}

# Highest zeta index a trigonometric entry touches, as a function of q.
def max_index(name, q):
    return 4 * q if name == "I000" else 2 * q


@dataclass(frozen=True)
class CatalogId:
    name: str
    basis: BasisKind = BasisKind.TRIG

    def __post_init__(self):
        if self.name not in CATALOG:
            raise ValueError(f"unknown catalog entry {self.name!r}")
        basis = as_kind(self.basis)
        object.__setattr__(self, "basis", basis)
        if basis.value not in CATALOG[self.name][2]:
            raise ValueError(f"{self.name} has no {basis.value} closed form")

    @property
    def arity(self):
        return CATALOG[self.name][0]


class _Vars:
    """zeta/xi/mu lookup with the time-component convention applied."""

    def __init__(self, draw, iv, q, tails):
        self.draw, self.iv = draw, iv
        self.tails = tails
        tw = tail_weights(q)
        self.sa, self.sb = math.sqrt(tw.alpha), math.sqrt(tw.beta)

    def z(self, i, j):
        return zeta_eff(self.draw, i, j, self.iv)

    def xi(self, i):
        if i == 0 or not self.tails:
            return 0.0
        return self.draw.xi[i - 1]

    def mu(self, i):
        if i == 0 or not self.tails:
            return 0.0
        return self.draw.mu[i - 1]


# --- trigonometric system ---------------------------------------------------

def _i1(v, a, q):
    d = v.iv.length
    s = sum(v.z(a, 2 * r - 1) / r for r in range(1, q + 1))
    return -d ** 1.5 / 2 * (v.z(a, 0) - SQ2 / PI * (s + v.sa * v.xi(a)))


def _i2(v, a, q):
    d = v.iv.length
    s_cos = sum(v.z(a, 2 * r) / r ** 2 for r in range(1, q + 1))
    s_sin = sum(v.z(a, 2 * r - 1) / r for r in range(1, q + 1))
    return d ** 2.5 * (v.z(a, 0) / 3
                       + 1 / (SQ2 * PI ** 2) * (s_cos + v.sb * v.mu(a))
                       - 1 / (SQ2 * PI) * (s_sin + v.sa * v.xi(a)))


def _i00(v, a, b, q):
    z = v.z
    s = 0.0
    for r in range(1, q + 1):
        s += 1 / r * (z(a, 2 * r) * z(b, 2 * r - 1) - z(a, 2 * r - 1) * z(b, 2 * r)
                         + SQ2 * (z(a, 2 * r - 1) * z(b, 0) - z(a, 0) * z(b, 2 * r - 1)))
    return 0.5 * v.iv.length * (z(a, 0) * z(b, 0) + s / PI
                                + SQ2 / PI * v.sa * (v.xi(a) * z(b, 0) - z(a, 0) * v.xi(b)))


def _i10(v, a, b, q):
    z, d = v.z, v.iv.length
    out = (z(a, 0) * z(b, 0) / 6
           - 1 / (2 * SQ2 * PI) * v.sa * v.xi(b) * z(a, 0)
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(b) * z(a, 0) - 2 * v.mu(a) * z(b, 0)))
    for r in range(1, q + 1):
        out += 1 / (2 * SQ2) * (-1 / (PI * r) * z(b, 2 * r - 1) * z(a, 0)
                                     + 1 / (PI ** 2 * r ** 2) * (z(b, 2 * r) * z(a, 0)
                                                                 - 2 * z(a, 2 * r) * z(b, 0)))
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r != l:
                out -= 1 / (2 * PI ** 2) / (r * r - l * l) * (
                    z(a, 2 * r) * z(b, 2 * l) + l / r * z(a, 2 * r - 1) * z(b, 2 * l - 1))
    for r in range(1, q + 1):
        out += (1 / (4 * PI * r) * (z(a, 2 * r) * z(b, 2 * r - 1) - z(a, 2 * r - 1) * z(b, 2 * r))
                     + 1 / (8 * PI ** 2 * r ** 2) * (3 * z(a, 2 * r - 1) * z(b, 2 * r - 1)
                                                     + z(b, 2 * r) * z(a, 2 * r)))
    return -d ** 2 * out


def _i01(v, a, b, q):
    z, d = v.z, v.iv.length
    out = (-z(a, 0) * z(b, 0) / 3
           - 1 / (2 * SQ2 * PI) * v.sa * (v.xi(a) * z(b, 0) - 2 * v.xi(b) * z(a, 0))
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(a) * z(b, 0) - 2 * v.mu(b) * z(a, 0)))
    for r in range(1, q + 1):
        out -= 1 / (2 * SQ2) * (1 / (PI * r) * (z(a, 2 * r - 1) * z(b, 0)
                                                      - 2 * z(b, 2 * r - 1) * z(a, 0))
                                     - 1 / (PI ** 2 * r ** 2) * (z(a, 2 * r) * z(b, 0)
                                                                 - 2 * z(b, 2 * r) * z(a, 0)))
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r != l:
                out += 1 / (2 * PI ** 2) / (r * r - l * l) * (
                    r / l * z(a, 2 * r - 1) * z(b, 2 * l - 1) + z(a, 2 * r) * z(b, 2 * l))
    for r in range(1, q + 1):
        out -= (1 / (4 * PI * r) * (z(a, 2 * r) * z(b, 2 * r - 1) - z(a, 2 * r - 1) * z(b, 2 * r))
                     - 1 / (8 * PI ** 2 * r ** 2) * (3 * z(a, 2 * r - 1) * z(b, 2 * r - 1)
                                                     + z(a, 2 * r) * z(b, 2 * r)))
    return d ** 2 * out


def _d_term(v, a, b, c, q):
    """The D_{T,t}^{(i_1 i_2 i_3) q} block of the triple expansion."""
    z = v.z
    first = 0.0
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r == l:
                continue
            first += (1 / (r * r - l * l) * (
                z(a, 2 * r) * z(b, 2 * l) * z(c, 0)
                - z(b, 2 * r) * z(a, 0) * z(c, 2 * l)
                + r / l * z(a, 2 * r - 1) * z(b, 2 * l - 1) * z(c, 0)
                - l / r * z(a, 0) * z(b, 2 * r - 1) * z(c, 2 * l - 1))
                - 1 / (r * l) * z(a, 2 * r - 1) * z(b, 0) * z(c, 2 * l - 1))
    square = 0.0
    for r in range(1, q + 1):
        for m in range(1, q + 1):
            square += 2 / (r * m) * (
                -z(a, 2 * r - 1) * z(b, 2 * m - 1) * z(c, 2 * m)
                + z(a, 2 * r - 1) * z(b, 2 * r) * z(c, 2 * m - 1)
                + z(a, 2 * r - 1) * z(b, 2 * m) * z(c, 2 * m - 1)
                - z(a, 2 * r) * z(b, 2 * r - 1) * z(c, 2 * m - 1))
            square += 1 / (m * (r + m)) * (
                -z(a, 2 * (m + r)) * z(b, 2 * r) * z(c, 2 * m)
                - z(a, 2 * (m + r) - 1) * z(b, 2 * r - 1) * z(c, 2 * m)
                - z(a, 2 * (m + r) - 1) * z(b, 2 * r) * z(c, 2 * m - 1)
                + z(a, 2 * (m + r)) * z(b, 2 * r - 1) * z(c, 2 * m - 1))
    upper = 0.0
    for m in range(1, q + 1):
        for l in range(m + 1, q + 1):
            upper += 1 / (m * (l - m)) * (
                z(a, 2 * (l - m)) * z(b, 2 * l) * z(c, 2 * m)
                + z(a, 2 * (l - m) - 1) * z(b, 2 * l - 1) * z(c, 2 * m)
                - z(a, 2 * (l - m) - 1) * z(b, 2 * l) * z(c, 2 * m - 1)
                + z(a, 2 * (l - m)) * z(b, 2 * l - 1) * z(c, 2 * m - 1))
            upper += 1 / (l * (l - m)) * (
                -z(a, 2 * (l - m)) * z(b, 2 * m) * z(c, 2 * l)
                + z(a, 2 * (l - m) - 1) * z(b, 2 * m - 1) * z(c, 2 * l)
                - z(a, 2 * (l - m) - 1) * z(b, 2 * m) * z(c, 2 * l - 1)
                - z(a, 2 * (l - m)) * z(b, 2 * m - 1) * z(c, 2 * l - 1))
    return first / (2 * PI ** 2) + (square + upper) / (4 * SQ2 * PI ** 2)


def _i000(v, a, b, c, q):
    z, d = v.z, v.iv.length
    out = (z(a, 0) * z(b, 0) * z(c, 0) / 6
           + v.sa / (2 * SQ2 * PI) * (v.xi(a) * z(b, 0) * z(c, 0) - v.xi(c) * z(b, 0) * z(a, 0))
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(a) * z(b, 0) * z(c, 0)
                                               - 2 * v.mu(b) * z(a, 0) * z(c, 0)
                                               + v.mu(c) * z(a, 0) * z(b, 0)))
    for r in range(1, q + 1):
        out += 1 / (2 * SQ2) * (
            1 / (PI * r) * (z(a, 2 * r - 1) * z(b, 0) * z(c, 0) - z(c, 2 * r - 1) * z(b, 0) * z(a, 0))
            + 1 / (PI ** 2 * r ** 2) * (z(a, 2 * r) * z(b, 0) * z(c, 0)
                                        - 2 * z(b, 2 * r) * z(c, 0) * z(a, 0)
                                        + z(c, 2 * r) * z(b, 0) * z(a, 0)))
    for r in range(1, q + 1):
        out += 1 / (4 * PI * r) * (
            z(a, 2 * r) * z(b, 2 * r - 1) * z(c, 0)
            - z(a, 2 * r - 1) * z(b, 2 * r) * z(c, 0)
            - z(b, 2 * r - 1) * z(c, 2 * r) * z(a, 0)
            + z(c, 2 * r - 1) * z(b, 2 * r) * z(a, 0))
        out += 1 / (8 * PI ** 2 * r ** 2) * (
            3 * z(a, 2 * r - 1) * z(b, 2 * r - 1) * z(c, 0)
            + z(a, 2 * r) * z(b, 2 * r) * z(c, 0)
            - 6 * z(a, 2 * r - 1) * z(c, 2 * r - 1) * z(b, 0)
            + 3 * z(b, 2 * r - 1) * z(c, 2 * r - 1) * z(a, 0)
            - 2 * z(a, 2 * r) * z(c, 2 * r) * z(b, 0)
            + z(c, 2 * r) * z(b, 2 * r) * z(a, 0))
    return d ** 1.5 * (out + _d_term(v, a, b, c, q))


# printed forms with time components ----------------------------------------

def _j10(v, a, q):
    s = sum(v.z(a, 2 * r - 1) / r for r in range(1, q + 1))
    return 0.5 * v.iv.length ** 1.5 * (v.z(a, 0) + SQ2 / PI * (s + v.sa * v.xi(a)))


def _j01(v, b, q):
    s = sum(v.z(b, 2 * r - 1) / r for r in range(1, q + 1))
    return 0.5 * v.iv.length ** 1.5 * (v.z(b, 0) - SQ2 / PI * (s + v.sa * v.xi(b)))


def _cos_sum(v, a, q):
    return sum(v.z(a, 2 * r) / r ** 2 for r in range(1, q + 1))


def _sin_sum(v, a, q):
    return sum(v.z(a, 2 * r - 1) / r for r in range(1, q + 1))


def _j001(v, c, q):
    return v.iv.length ** 2.5 * (
        v.z(c, 0) / 6
        + 1 / (2 * SQ2 * PI ** 2) * (_cos_sum(v, c, q) + v.sb * v.mu(c))
        - 1 / (2 * SQ2 * PI) * (_sin_sum(v, c, q) + v.sa * v.xi(c)))


def _j010(v, b, q):
    return v.iv.length ** 2.5 * (
        v.z(b, 0) / 6 - 1 / (SQ2 * PI ** 2) * (_cos_sum(v, b, q) + v.sb * v.mu(b)))


def _j100(v, a, q):
    return v.iv.length ** 2.5 * (
        v.z(a, 0) / 6
        + 1 / (2 * SQ2 * PI ** 2) * (_cos_sum(v, a, q) + v.sb * v.mu(a))
        + 1 / (2 * SQ2 * PI) * (_sin_sum(v, a, q) + v.sa * v.xi(a)))


def _j011(v, b, c, q):
    z = v.z
    out = (z(b, 0) * z(c, 0) / 6
           - 1 / (2 * SQ2 * PI) * v.sa * v.xi(c) * z(b, 0)
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(c) * z(b, 0) - 2 * v.mu(b) * z(c, 0)))
    for r in range(1, q + 1):
        out += 1 / (2 * SQ2) * (-1 / (PI * r) * z(c, 2 * r - 1) * z(b, 0)
                                     + 1 / (PI ** 2 * r ** 2) * (z(c, 2 * r) * z(b, 0)
                                                                 - 2 * z(b, 2 * r) * z(c, 0)))
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r != l:
                out -= 1 / (2 * PI ** 2) / (r * r - l * l) * (
                    z(b, 2 * r) * z(c, 2 * l) + l / r * z(b, 2 * r - 1) * z(c, 2 * l - 1))
    for r in range(1, q + 1):
        out += (1 / (4 * PI * r) * (z(b, 2 * r) * z(c, 2 * r - 1) - z(b, 2 * r - 1) * z(c, 2 * r))
                     + 1 / (8 * PI ** 2 * r ** 2) * (3 * z(b, 2 * r - 1) * z(c, 2 * r - 1)
                                                     + z(c, 2 * r) * z(b, 2 * r)))
    return v.iv.length ** 2 * out


def _j110(v, a, b, q):
    z = v.z
    out = (z(a, 0) * z(b, 0) / 6
           + 1 / (2 * SQ2 * PI) * v.sa * v.xi(a) * z(b, 0)
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(a) * z(b, 0) - 2 * v.mu(b) * z(a, 0)))
    for r in range(1, q + 1):
        out += 1 / (2 * SQ2) * (1 / (PI * r) * z(a, 2 * r - 1) * z(b, 0)
                                     + 1 / (PI ** 2 * r ** 2) * (z(a, 2 * r) * z(b, 0)
                                                                 - 2 * z(b, 2 * r) * z(a, 0)))
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r != l:
                out += 1 / (2 * PI ** 2) / (r * r - l * l) * (
                    r / l * z(a, 2 * r - 1) * z(b, 2 * l - 1) + z(a, 2 * r) * z(b, 2 * l))
    for r in range(1, q + 1):
        out += (1 / (4 * PI * r) * (z(b, 2 * r - 1) * z(a, 2 * r) - z(a, 2 * r - 1) * z(b, 2 * r))
                     + 1 / (8 * PI ** 2 * r ** 2) * (3 * z(a, 2 * r - 1) * z(b, 2 * r - 1)
                                                     + z(a, 2 * r) * z(b, 2 * r)))
    return v.iv.length ** 2 * out


def _j101(v, a, c, q):
    z = v.z
    out = (z(a, 0) * z(c, 0) / 6
           + 1 / (2 * SQ2 * PI) * v.sa * (v.xi(a) * z(c, 0) - v.xi(c) * z(a, 0))
           + 1 / (2 * SQ2 * PI ** 2) * v.sb * (v.mu(a) * z(c, 0) + v.mu(c) * z(a, 0)))
    for r in range(1, q + 1):
        out += 1 / (2 * SQ2) * (
            1 / (PI * r) * (z(a, 2 * r - 1) * z(c, 0) - z(c, 2 * r - 1) * z(a, 0))
            + 1 / (PI ** 2 * r ** 2) * (z(a, 2 * r) * z(c, 0) + z(c, 2 * r) * z(a, 0)))
    for r in range(1, q + 1):
        for l in range(1, q + 1):
            if r != l:
                out -= 1 / (2 * PI ** 2) / (r * l) * z(a, 2 * r - 1) * z(c, 2 * l - 1)
    for r in range(1, q + 1):
        out -= 1 / (4 * PI ** 2 * r ** 2) * (3 * z(a, 2 * r - 1) * z(c, 2 * r - 1)
                                                  + z(a, 2 * r) * z(c, 2 * r))
    return v.iv.length ** 2 * out


_TRIG = {
    "I0": lambda v, idx, q: math.sqrt(v.iv.length) * v.z(idx[0], 0),
    "I1": lambda v, idx, q: _i1(v, idx[0], q),
    "I2": lambda v, idx, q: _i2(v, idx[0], q),
    "I00": lambda v, idx, q: _i00(v, idx[0], idx[1], q),
    "I10": lambda v, idx, q: _i10(v, idx[0], idx[1], q),
    "I01": lambda v, idx, q: _i01(v, idx[0], idx[1], q),
    "I000": lambda v, idx, q: _i000(v, idx[0], idx[1], idx[2], q),
    "J10_i0": lambda v, idx, q: _j10(v, idx[0], q),
    "J01_0i": lambda v, idx, q: _j01(v, idx[1], q),
    "J001": lambda v, idx, q: _j001(v, idx[2], q),
    "J010": lambda v, idx, q: _j010(v, idx[1], q),
    "J100": lambda v, idx, q: _j100(v, idx[0], q),
    "J011_0ii": lambda v, idx, q: _j011(v, idx[1], idx[2], q),
    "J110_ii0": lambda v, idx, q: _j110(v, idx[0], idx[1], q),
    "J101_i0i": lambda v, idx, q: _j101(v, idx[0], idx[2], q),
}

# Substitution path: a J entry is the I00 / I000 display with zeta_eff plugged in.
SUBSTITUTION = {"J10_i0": "I00", "J01_0i": "I00", "J001": "I000", "J010": "I000",
                "J100": "I000", "J011_0ii": "I000", "J110_ii0": "I000", "J101_i0i": "I000"}


def _check_idx(cid, idx, draw):
    arity, zeros, _ = CATALOG[cid.name]
    idx = tuple(int(i) for i in idx)
    if len(idx) != arity:
        raise ValueError(f"{cid.name} takes {arity} component indices, got {len(idx)}")
    for pos, i in enumerate(idx):
        if pos in zeros and i != 0:
            raise ValueError(f"{cid.name}: component {pos + 1} must be the time component 0")
        if pos not in zeros and cid.name.startswith("J") and i == 0:
            raise ValueError(f"{cid.name}: component {pos + 1} must be a Wiener component")
        if i > draw.m or i < 0:
            raise IndexError(f"component {i} outside 0..{draw.m}")
    return idx


def eval_catalog(cid, iv, idx, q, draw, tails=True):
    """Evaluate a printed closed form.

    For the Legendre forms ``q`` is the truncation order p of the series.
    """
    if isinstance(cid, str):
        cid = CatalogId(cid)
    if q < 0:
        raise ValueError("q must be nonnegative")
    idx = _check_idx(cid, idx, draw)
    if cid.basis is BasisKind.LEGENDRE:
        return legendre_closed_forms(cid.name, iv, idx, q, draw)
    need = max_index(cid.name, q)
    if need > draw.p:
        raise ValueError(f"{cid.name} at q={q} needs zeta indices up to {need}, draw has {draw.p}")
    return _TRIG[cid.name](_Vars(draw, iv, q, tails), idx, q)


def eval_by_substitution(name, iv, idx, q, draw, tails=True):
    """Evaluate a J entry through the generic I00 / I000 display with zeta_eff."""
    cid = CatalogId(name)
    idx = _check_idx(cid, idx, draw)
    return _TRIG[SUBSTITUTION[name]](_Vars(draw, iv, q, tails), idx, q)


# --- Legendre system --------------------------------------------------------

def legendre_closed_forms(name, iv, idx, p, draw):
    """Exact Legendre forms of I0, I1, I2 and the p-truncated series for I00."""
    z = lambda i, j: zeta_eff(draw, i, j, iv)
    d = iv.length
    a = idx[0]
    if name == "I0":
        return math.sqrt(d) * z(a, 0)
    if name == "I1":
        if p < 1:
            raise ValueError("I1 needs p >= 1")
        return -d ** 1.5 / 2 * (z(a, 0) + z(a, 1) / math.sqrt(3.0))
    if name == "I2":
        if p < 2:
            raise ValueError("I2 needs p >= 2")
        return d ** 2.5 / 3 * (z(a, 0) + math.sqrt(3.0) / 2 * z(a, 1) + z(a, 2) / (2 * math.sqrt(5.0)))
    if name == "I00":
        b = idx[1]
        s = 0.0
        for i in range(1, p + 1):
            s += 1 / math.sqrt(4 * i * i - 1) * (z(a, i - 1) * z(b, i) - z(a, i) * z(b, i - 1))
        return d / 2 * (z(a, 0) * z(b, 0) + s)
    raise ValueError(f"no Legendre closed form for {name}")


def trace_identity_partial(basis, which, iv, jmax):
    """sum_{j <= jmax} C_jj for the (1,0) or (0,1) weighted double kernel."""
    exps = {"C10": (1, 0), "C01": (0, 1)}[which]
    table = build_table(basis, WeightedKernel(exps, iv), jmax)
    return float(np.trace(table.values))


# --- coefficient extraction -------------------------------------------------

class _Poly:
    """Sparse multilinear polynomial in named Gaussian atoms.

    Keys are tuples of atoms ``(component, family, index)`` sorted by
    component; ``family`` is ``"z"``, ``"xi"`` or ``"mu"``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def _lift(other):
        if isinstance(other, _Poly):
            return other
        return _Poly({(): float(other)}) if other else _Poly()

    def __iadd__(self, other):
        for key, c in self._lift(other).terms.items():
            self.terms[key] = self.terms.get(key, 0.0) + c
        return self

    def __isub__(self, other):
        for key, c in self._lift(other).terms.items():
            self.terms[key] = self.terms.get(key, 0.0) - c
        return self

    def __add__(self, other):
        out = _Poly(dict(self.terms))
        out += other
        return out

    __radd__ = __add__

    def __sub__(self, other):
        out = _Poly(dict(self.terms))
        out -= other
        return out

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return _Poly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            other = float(other)
            return _Poly({k: c * other for k, c in self.terms.items()}) if other else _Poly()
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                out[key] = out.get(key, 0.0) + c1 * c2
        return _Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1.0 / float(other))


class _Atoms:
    def __init__(self, family, indexed):
        self.family, self.indexed = family, indexed

    def __getitem__(self, key):
        if self.indexed:
            comp, j = key
            return _Poly({((comp + 1, self.family, int(j)),): 1.0})
        return _Poly({((key + 1, self.family, 0),): 1.0})


class _RecordingDraw:
    """Stand-in for a GaussianDraw whose variates are symbolic atoms."""

    batch_shape = ()

    def __init__(self, m, p):
        self.m, self.p = m, p
        self.zeta = _Atoms("z", True)
        self.xi = _Atoms("xi", False)
        self.mu = _Atoms("mu", False)


def catalog_coefficients(name, idx, q, tails=True):
    """Coefficients of a trigonometric closed form on the unit interval.

    Returns ``{monomial: coefficient}`` where each monomial is a sorted tuple
    of atoms ``(component, family, index)``.  The form is multilinear in the
    variates, so running it on symbolic atoms recovers its exact coefficients.
    """
    cid = CatalogId(name)
    draw = _RecordingDraw(max(idx), max_index(name, q))
    idx = _check_idx(cid, idx, draw)
    poly = _Poly._lift(_TRIG[name](_Vars(draw, UNIT, q, tails), idx, q))
    return {k: c for k, c in poly.terms.items() if c != 0.0}
