"""Reproducible standard Gaussian variates for the truncated expansions.

Each slot gets its own Philox stream keyed by ``(seed, stream tag, i, j)``,
so a variate does not depend on how many other variates were requested or
in which order.  With ``trials=n`` every slot carries ``n`` independent
replicas along a trailing axis.
"""

from dataclasses import dataclass
import math

import numpy as np

ZETA, XI, MU = 0, 1, 2

PI2_6 = math.pi ** 2 / 6.0
PI4_90 = math.pi ** 4 / 90.0


@dataclass(frozen=True)
class TailWeights:
    alpha: float
    beta: float


def tail_weights(q):
    """alpha_q = pi^2/6 - sum_{r<=q} r^-2 and beta_q = pi^4/90 - sum_{r<=q} r^-4."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q == 0:
        return TailWeights(PI2_6, PI4_90)
    r = np.arange(q, 0, -1, dtype=float)  # small terms first
    alpha = PI2_6 - math.fsum(1.0 / r ** 2)
    beta = PI4_90 - math.fsum(1.0 / r ** 4)
    if q > 1000:
        # the subtraction cancels catastrophically; use the Euler-Maclaurin tail
        alpha = _tail_zeta(2, q)
        beta = _tail_zeta(4, q)
    return TailWeights(max(alpha, 0.0), max(beta, 0.0))


def _tail_zeta(s, q):
    """sum_{r>q} r^-s via Euler-Maclaurin at N = q + 1 (error far below 1e-16 relative for q > 1000)."""
    N = q + 1.0
    return (N ** (1 - s) / (s - 1) + 0.5 * N ** -s + s / 12.0 * N ** (-s - 1)
            - s * (s + 1) * (s + 2) / 720.0 * N ** (-s - 3))


@dataclass(frozen=True)
class GaussianDraw:
    """Variates zeta[i-1, j], xi[i-1], mu[i-1] for components i = 1..m.

    Arrays may carry a trailing trial axis.  Component i = 0 (time) is never
    stored; see :func:`stochexp.expansions.zeta_eff`.
    """
    zeta: np.ndarray
    xi: np.ndarray
    mu: np.ndarray
    q: int = 0
    seed: int | None = None

    @property
    def m(self):
        return self.zeta.shape[0]

    @property
    def p(self):
        return self.zeta.shape[1] - 1

    @property
    def batch_shape(self):
        return self.zeta.shape[2:]


def _stream(seed, tag, i, j):
    ss = np.random.SeedSequence(int(seed) & (2 ** 64 - 1), spawn_key=(tag, i, j))
    return np.random.Generator(np.random.Philox(ss))


def sample(seed, m, p, q=0, trials=None):
    """Independent N(0, 1) variates for ``m`` components, indices ``0..p``."""
    if m < 1 or p < 0 or q < 0:
        raise ValueError("need m >= 1, p >= 0, q >= 0")
    shape = () if trials is None else (int(trials),)
    zeta = np.empty((m, p + 1) + shape)
    xi = np.empty((m,) + shape)
    mu = np.empty((m,) + shape)
    for i in range(1, m + 1):
        for j in range(p + 1):
            zeta[i - 1, j] = _stream(seed, ZETA, i, j).standard_normal(shape)
        xi[i - 1] = _stream(seed, XI, i, q).standard_normal(shape)
        mu[i - 1] = _stream(seed, MU, i, q).standard_normal(shape)
    for arr in (zeta, xi, mu):
        arr.setflags(write=False)
    return GaussianDraw(zeta, xi, mu, q, seed)


def from_arrays(zeta, xi=None, mu=None, q=0):
    """Wrap externally produced variates (e.g. computed from a Wiener path)."""
    zeta = np.asarray(zeta, dtype=float)
    tail_shape = (zeta.shape[0],) + zeta.shape[2:]
    xi = np.zeros(tail_shape) if xi is None else np.asarray(xi, dtype=float)
    mu = np.zeros(tail_shape) if mu is None else np.asarray(mu, dtype=float)
    return GaussianDraw(zeta, xi, mu, q, None)
