"""Complete orthonormal systems on an interval [t, T].

Two systems are supported: shifted, normalized Legendre polynomials and the
trigonometric system ``1, sqrt(2) sin(2 pi r x), sqrt(2) cos(2 pi r x)`` laid
out as ``j = 0``, ``j = 2r - 1`` (sine), ``j = 2r`` (cosine).
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

MIN_LENGTH = 1e-12


class BasisKind(str, Enum):
    LEGENDRE = "legendre"
    TRIG = "trig"


def as_kind(kind):
    """Coerce ``'legendre'``/``'trig'`` (or a BasisKind) to BasisKind."""
    if isinstance(kind, BasisKind):
        return kind
    try:
        return BasisKind(str(kind).lower())
    except ValueError:
        raise ValueError(f"unknown basis kind {kind!r}") from None


@dataclass(frozen=True)
class Interval:
    t: float = 0.0
    T: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.T)):
            raise ValueError("interval endpoints must be finite")
        if not self.T - self.t > MIN_LENGTH:
            raise ValueError(f"invalid interval [{self.t}, {self.T}]: need T - t > {MIN_LENGTH}")

    @property
    def length(self):
        return self.T - self.t

    def to_unit(self, s):
        return (np.asarray(s, dtype=float) - self.t) / self.length


UNIT = Interval(0.0, 1.0)


def legendre_values(jmax, y):
    """P_0..P_jmax at points ``y`` in [-1, 1] by the three-term recurrence.

    Returns an array of shape ``(jmax + 1,) + y.shape``.
    """
    y = np.asarray(y, dtype=float)
    out = np.empty((jmax + 1,) + y.shape)
    out[0] = 1.0
    if jmax >= 1:
        out[1] = y
    for n in range(1, jmax):
        out[n + 1] = ((2 * n + 1) * y * out[n] - n * out[n - 1]) / (n + 1)
    return out


def unit_basis_matrix(kind, jmax, x):
    """phi_0..phi_jmax on the unit interval, shape ``(jmax + 1,) + x.shape``.

    No domain check; ``x`` is assumed to lie in [0, 1].
    """
    kind = as_kind(kind)
    x = np.asarray(x, dtype=float)
    if kind is BasisKind.LEGENDRE:
        vals = legendre_values(jmax, 2.0 * x - 1.0)
        scale = np.sqrt(2.0 * np.arange(jmax + 1) + 1.0)
        return vals * scale.reshape((-1,) + (1,) * x.ndim)
    out = np.empty((jmax + 1,) + x.shape)
    out[0] = 1.0
    rmax = jmax // 2 + 1
    for r in range(1, rmax + 1):
        arg = 2.0 * np.pi * r * x
        if 2 * r - 1 <= jmax:
            out[2 * r - 1] = math.sqrt(2.0) * np.sin(arg)
        if 2 * r <= jmax:
            out[2 * r] = math.sqrt(2.0) * np.cos(arg)
    return out


def basis_matrix(kind, iv, jmax, s):
    """phi_0..phi_jmax on ``iv`` evaluated at ``s``; shape ``(jmax + 1,) + s.shape``."""
    s = np.asarray(s, dtype=float)
    slack = 1e-12 * iv.length
    if np.any(s < iv.t - slack) or np.any(s > iv.T + slack):
        raise ValueError(f"evaluation point outside [{iv.t}, {iv.T}]")
    x = np.clip(iv.to_unit(s), 0.0, 1.0)
    return unit_basis_matrix(kind, jmax, x) / math.sqrt(iv.length)


def eval_phi(kind, iv, j, s):
    """Value of the j-th basis function on ``iv`` at ``s`` (scalar or array)."""
    if j < 0:
        raise ValueError("basis index must be nonnegative")
    out = basis_matrix(kind, iv, j, s)[j]
    return float(out) if out.ndim == 0 else out


def gauss_legendre(n, a=0.0, b=1.0):
    """n-point Gauss-Legendre nodes and weights on [a, b]."""
    y, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (y + 1.0), half * w


def composite_gauss(a, b, n_total, per_panel=20):
    """Composite Gauss-Legendre rule with at least ``n_total`` nodes."""
    panels = max(1, -(-n_total // per_panel))
    edges = np.linspace(a, b, panels + 1)
    y, w = np.polynomial.legendre.leggauss(per_panel)
    half = 0.5 * np.diff(edges)
    nodes = (edges[:-1, None] + half[:, None] * (y + 1.0)).ravel()
    weights = (half[:, None] * w).ravel()
    return nodes, weights


def orthonormality_residual(kind, iv, jmax):
    """max |<phi_i, phi_j> - delta_ij| over 0 <= i, j <= jmax."""
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    # panels of jmax + 1 nodes are exact for every Legendre product
    nodes, weights = composite_gauss(iv.t, iv.T, max(200, 4 * jmax), per_panel=max(20, jmax + 1))
    phi = basis_matrix(kind, iv, jmax, nodes)
    gram = (phi * weights) @ phi.T
    return float(np.max(np.abs(gram - np.eye(jmax + 1))))
