"""Karhunen-Loeve (Brownian bridge) route to iterated Stratonovich integrals.

The bridge coefficients are tied to the trigonometric zeta's by integrating
the defining integrals by parts on [0, Delta]:

    a_{i,r} = -sqrt(Delta) / (sqrt(2) pi r) * zeta_{2r-1}
    b_{i,r} =  sqrt(Delta) / (sqrt(2) pi r) * zeta_{2r}
    a_{i,0} =  sqrt(2 Delta) / pi * (sum_{r<=q} zeta_{2r-1} / r + sqrt(alpha_q) xi_q)

so a_{i,0} = -2 sum_r a_{i,r} and Var(a_{i,0}) = Delta / 3.
"""

from dataclasses import dataclass
import math

import numpy as np

from .gaussian import tail_weights

PI = math.pi
SQ2 = math.sqrt(2.0)


@dataclass(frozen=True)
class KLCoefficients:
    """a[i-1, r] for r = 0..R (column 0 is a_{i,0}); b[i-1, r] with b[:, 0] unused (zero)."""

    a: np.ndarray
    b: np.ndarray
    Delta: float

    @property
    def R(self):
        return self.a.shape[1] - 1


def kl_from_draw(draw, Delta, R):
    """Bridge coefficients up to order R from the zeta/xi slots of ``draw``."""
    if 2 * R > draw.p:
        raise ValueError(f"order R={R} needs zeta indices up to {2 * R}, draw has {draw.p}")
    if 2 * draw.q > draw.p:
        raise ValueError("a_{i,0} needs zeta indices up to 2q for the draw's tail order q")
    r = np.arange(1, R + 1).reshape((-1,) + (1,) * len(draw.batch_shape))
    scale = math.sqrt(Delta) / (SQ2 * PI * r)
    m = draw.m
    a = np.zeros((m, R + 1) + draw.batch_shape)
    b = np.zeros_like(a)
    a[:, 1:] = -scale * draw.zeta[:, 1:2 * R:2]
    b[:, 1:] = scale * draw.zeta[:, 2:2 * R + 1:2]
    rq = np.arange(1, draw.q + 1).reshape((-1,) + (1,) * len(draw.batch_shape))
    head = np.sum(draw.zeta[:, 1:2 * draw.q:2] / rq, axis=1)
    a[:, 0] = math.sqrt(2 * Delta) / PI * (head + math.sqrt(tail_weights(draw.q).alpha) * draw.xi)
    return KLCoefficients(a, b, float(Delta))


def _slots(draw, i, q):
    z = draw.zeta[i - 1]
    r = np.arange(1, q + 1).reshape((-1,) + (1,) * len(draw.batch_shape))
    return z[0], z[1:2 * q:2], z[2:2 * q + 1:2], r


def _need(draw, i, q):
    if i < 1 or i > draw.m:
        raise IndexError(f"component {i} outside 1..{draw.m}")
    if 2 * q > draw.p:
        raise ValueError(f"q={q} needs zeta indices up to {2 * q}, draw has {draw.p}")


def milstein_I1(q, Delta, draw, i=1):
    """-(Delta^{3/2}/2) (zeta_0 - sqrt2/pi (sum zeta_{2r-1}/r + sqrt(alpha_q) xi_q))."""
    _need(draw, i, q)
    z0, zs, _, r = _slots(draw, i, q)
    tail = math.sqrt(tail_weights(q).alpha) * draw.xi[i - 1]
    return -Delta ** 1.5 / 2 * (z0 - SQ2 / PI * (np.sum(zs / r, axis=0) + tail))


def milstein_I2(q, Delta, draw, i=1):
    _need(draw, i, q)
    tw = tail_weights(q)
    z0, zs, zc, r = _slots(draw, i, q)
    cos_part = np.sum(zc / r ** 2, axis=0) + math.sqrt(tw.beta) * draw.mu[i - 1]
    sin_part = np.sum(zs / r, axis=0) + math.sqrt(tw.alpha) * draw.xi[i - 1]
    return Delta ** 2.5 * (z0 / 3 + cos_part / (SQ2 * PI ** 2) - sin_part / (SQ2 * PI))


def milstein_I00(q, Delta, draw, i1=1, i2=2):
    _need(draw, i1, q)
    _need(draw, i2, q)
    sa = math.sqrt(tail_weights(q).alpha)
    u0, us, uc, r = _slots(draw, i1, q)
    v0, vs, vc, _ = _slots(draw, i2, q)
    inner = np.sum((uc * vs - us * vc + SQ2 * (us * v0 - u0 * vs)) / r, axis=0)
    tails = SQ2 / PI * sa * (draw.xi[i1 - 1] * v0 - u0 * draw.xi[i2 - 1])
    return Delta / 2 * (u0 * v0 + inner / PI + tails)


# --- the triple integral ----------------------------------------------------

def _blocks(kl, i2, i3, q):
    """A, B, C of the double-integral expansion, every series cut at q."""
    d = kl.Delta
    a2, b2 = kl.a[i2 - 1], kl.b[i2 - 1]
    a3, b3 = kl.a[i3 - 1], kl.b[i3 - 1]
    A = 0.0
    B = 0.0
    for r in range(1, q + 1):
        A += r * (a2[r] * b3[r] - b2[r] * a3[r])
        B += a2[r] * a3[r] + b2[r] * b3[r]
    C = 0.0
    for l in range(1, q + 1):
        for r in range(1, q + 1):
            if r != l:
                C += r / (r * r - l * l) * (r * a2[r] * a3[l] + l * b2[r] * b3[l])
    return PI / d * A, B / (2 * d), -C / d


def _b_sum(kl, i, q):
    return sum(kl.b[i - 1][r] / r for r in range(1, q + 1))


def _d_block(kl, i1, i2, i3, q):
    """D^{(q)} with both upper limits equal to q, exactly as the double sums read."""
    a1, b1 = kl.a[i1 - 1], kl.b[i1 - 1]
    a2, b2 = kl.a[i2 - 1], kl.b[i2 - 1]
    a3, b3 = kl.a[i3 - 1], kl.b[i3 - 1]
    first = 0.0
    for l in range(1, q + 1):
        for r in range(1, q + 1):
            first += l * (a2[l] * (a3[l + r] * b1[r] - a1[r] * b3[l + r])
                          + b2[l] * (a1[r] * a3[r + l] + b1[r] * b3[l + r]))
    lower = 0.0
    for l in range(1, q + 1):
        for r in range(1, l):
            lower += l * (a2[l] * (a1[r] * b3[l - r] + a3[l - r] * b1[r])
                          - b2[l] * (a1[r] * a3[l - r] - b1[r] * b3[l - r]))
    upper = 0.0
    for l in range(1, q + 1):
        for r in range(l + 1, q + 1):
            upper += l * (a2[l] * (a3[r - l] * b1[r] - a1[r] * b3[r - l])
                          + b2[l] * (a1[r] * a3[r - l] + b1[r] * b3[r - l]))
    return PI / (2 * kl.Delta ** 1.5) * (-first + lower + upper)


def milstein_j011(q, Delta, draw, i2, i3, kl=None):
    """J*_(011)^{(0 i2 i3)} from its bridge-coefficient display.

    The leading product carries a factor Delta (the integral scales as
    Delta^2); without it the expansion is not homogeneous in Delta.
    """
    kl = kl if kl is not None else kl_from_draw(draw, Delta, 2 * q)
    d = Delta
    j2 = math.sqrt(d) * draw.zeta[i2 - 1, 0]
    j3 = math.sqrt(d) * draw.zeta[i3 - 1, 0]
    A, B, C = _blocks(kl, i2, i3, q)
    return (d * j2 * j3 / 6 - d / PI * j3 * _b_sum(kl, i2, q) + d ** 2 * B
            - d / 4 * kl.a[i3 - 1][0] * j2 + d / (2 * PI) * _b_sum(kl, i3, q) * j2
            + d ** 2 * C + d ** 2 / 2 * A)


def milstein_triple(q, Delta, draw, idx=(1, 2, 3)):
    """The triple Stratonovich integral J*_(111)^{(i1 i2 i3)} by the bridge expansion.

    Every series in A, B, C and b is cut at q; D uses the equal-limit double
    sums D^{(q)}; the double integral J*_(11) is the matching q-truncated form.
    Needs zeta indices up to 4q.
    """
    i1, i2, i3 = (int(i) for i in idx)
    if min(i1, i2, i3) < 1:
        raise NotImplementedError("the bridge expansion is given for Wiener components only")
    for i in (i1, i2, i3):
        if i > draw.m:
            raise IndexError(f"component {i} outside 1..{draw.m}")
    kl = kl_from_draw(draw, Delta, 2 * q)
    d = Delta
    j = {i: math.sqrt(d) * draw.zeta[i - 1, 0] for i in (i1, i2, i3)}
    A12, _, _ = _blocks(kl, i1, i2, q)
    _, B13, _ = _blocks(kl, i1, i3, q)
    _, _, C21 = _blocks(kl, i2, i1, q)
    j011 = milstein_j011(q, Delta, draw, i2, i3, kl)
    j11 = milstein_I00(q, Delta, draw, i2, i3)
    return (j[i1] * j011 / d + kl.a[i1 - 1][0] / 2 * j11
            + _b_sum(kl, i1, q) / (2 * PI) * j[i2] * j[i3]
            - d * j[i2] * B13 + d * j[i3] * (A12 / 2 - C21)
            + d ** 1.5 * _d_block(kl, i1, i2, i3, q))
