"""Fine-grid Monte Carlo oracle for iterated integrals and their expansions.

One Wiener path per trial drives both sides: the iterated integral is formed
by nested Riemann sums, and the zeta's feeding an expansion are Riemann-
Stieltjes sums of the basis functions against the same increments.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .basis import UNIT, BasisKind, Interval, as_kind, basis_matrix
from .catalog import KERNELS, CatalogId, eval_catalog, max_index
from .expansions import ITO, STRATONOVICH, ito_truncated, stratonovich_truncated
from .gaussian import from_arrays, tail_weights
from .kernel_coeffs import CoefficientTable, WeightedKernel

CHUNK = 250  # trials per random stream; results do not depend on thread count


@dataclass(frozen=True)
class WienerPath:
    """Increments dW[i-1, n, trial] on an equispaced grid of [t, T]."""

    grid: np.ndarray
    increments: np.ndarray
    seed: object = None

    @property
    def N(self):
        return self.grid.size - 1

    @property
    def m(self):
        return self.increments.shape[0]

    @property
    def iv(self):
        return Interval(float(self.grid[0]), float(self.grid[-1]))

    @property
    def h(self):
        return (self.grid[-1] - self.grid[0]) / self.N


@dataclass(frozen=True)
class MCEstimate:
    """Sample statistics of the difference D = truth - approximation.

    ``second_moment`` is the mean-square error estimate and ``stderr`` its
    standard error; ``mean`` is the sample mean of D.
    """

    mean: float
    second_moment: float
    stderr: float
    trials: int
    grid_N: int

    @property
    def error(self):
        return self.second_moment


def simulate_path(seed, m, N, iv=UNIT, trials=1, key=()):
    """Independent increments N(0, h) for m components, N steps and ``trials`` paths."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    rng = np.random.Generator(np.random.Philox(ss))
    h = iv.length / N
    dw = rng.standard_normal((m, N, trials)) * math.sqrt(h)
    return WienerPath(np.linspace(iv.t, iv.T, N + 1), dw, seed)


def grid_allowance(k, iv, N):
    """First-order bias allowance of the nested sums, 3 (T - t)^k / N."""
    return 3 * iv.length ** k / N


def simulate_iterated(path, kernel, idx, kind=STRATONOVICH):
    """Nested Riemann sums of the weighted iterated integral, one value per trial.

    Ito: left-point weights and left-point inner integrals.  Stratonovich:
    midpoint weights and the average of the inner accumulated integral over
    each step.  A component index 0 integrates against d tau.
    """
    if kind not in (ITO, STRATONOVICH):
        raise ValueError(f"unknown integral kind {kind!r}")
    if len(idx) != kernel.k:
        raise ValueError("one component index per kernel factor")
    tau = path.grid[:-1] + (path.h / 2 if kind == STRATONOVICH else 0.0)
    trials = path.increments.shape[2]
    inner = None
    for e, i in zip(kernel.exponents, idx):
        w = ((path.grid[0] - tau) ** e)[:, None]
        dx = path.increments[i - 1] if i >= 1 else np.full((path.N, trials), path.h)
        if inner is None:
            incr = w * dx
        else:
            right = np.cumsum(inner, axis=0)
            left = right - inner
            mid = (left + right) / 2 if kind == STRATONOVICH else left
            incr = w * mid * dx
        inner = incr
    return np.sum(inner, axis=0)


def zeta_matrix(path, basis, p, i):
    """zeta_0..zeta_p of component i as left-point sums, shape (p+1, trials)."""
    phi = basis_matrix(as_kind(basis), path.iv, p, path.grid[:-1])
    return phi @ path.increments[i - 1]


def zeta_from_path(path, basis, j, i):
    return zeta_matrix(path, basis, j, i)[j]


@lru_cache(maxsize=16)
def _tail_profiles(q, N, rcap):
    x = (np.arange(N) / N)
    g_sin = np.zeros(N)
    g_cos = np.zeros(N)
    for r in range(q + 1, rcap + 1):
        g_sin += np.sin(2 * math.pi * r * x) / r
        g_cos += np.cos(2 * math.pi * r * x) / (r * r)
    return g_sin, g_cos


def tail_variables(path, q, i, rcap=None):
    """xi_q and mu_q from the path, summing zeta's for r = q+1..rcap."""
    rcap = 16 * q + 1000 if rcap is None else rcap
    if rcap < q:
        raise ValueError(f"reconstruction cap {rcap} below q={q}")
    tw = tail_weights(q)
    g_sin, g_cos = _tail_profiles(q, path.N, rcap)
    scale = math.sqrt(2 / path.iv.length)
    dw = path.increments[i - 1]
    xi = scale * (g_sin @ dw) / math.sqrt(tw.alpha)
    mu = scale * (g_cos @ dw) / math.sqrt(tw.beta)
    return xi, mu


def draw_from_path(path, basis, p, q=0, tails=True, rcap=None):
    """GaussianDraw built from the path's own zeta's (and tail variables)."""
    zeta = np.stack([zeta_matrix(path, basis, p, i) for i in range(1, path.m + 1)])
    if tails and as_kind(basis) is BasisKind.TRIG:
        pairs = [tail_variables(path, q, i, rcap) for i in range(1, path.m + 1)]
        xi = np.stack([a for a, _ in pairs])
        mu = np.stack([b for _, b in pairs])
        return from_arrays(zeta, xi, mu, q=q)
    return from_arrays(zeta, q=q)


def _target_parts(target, q, kind):
    """(kernel, zeta order p, basis, approximation callable(draw, iv, idx))."""
    if isinstance(target, CoefficientTable):
        expand = stratonovich_truncated if kind == STRATONOVICH else ito_truncated
        return (target.kernel, max(target.orders), target.kind,
                lambda draw, iv, idx: expand(target, idx, draw).value)
    cid = target if isinstance(target, CatalogId) else CatalogId(target)
    p = max_index(cid.name, q) if cid.basis is BasisKind.TRIG else q
    return (WeightedKernel(KERNELS[cid.name]), p, cid.basis,
            lambda draw, iv, idx: eval_catalog(cid, iv, idx, q, draw))


def _chunk(target, idx, q, grid_N, seed, c, n, iv, kind, rcap):
    kernel, p, basis, approx = _target_parts(target, q, kind)
    m = max(max(idx), 1)
    path = simulate_path(seed, m, grid_N, iv, n, key=(c,))
    truth = simulate_iterated(path, kernel, idx, kind)
    draw = draw_from_path(path, basis, p, q, tails=True, rcap=rcap)
    return truth - approx(draw, iv, idx)


def ms_error_vs_truth(target, idx, q, trials, grid_N, seed, iv=UNIT, kind=STRATONOVICH,
                      threads=1, rcap=None):
    """Monte Carlo estimate of E[(J - J^q)^2] with pathwise-coupled zeta's.

    ``target`` is a catalog entry name / CatalogId (trigonometric forms use
    the tail variables) or a CoefficientTable expanded generically.
    """
    if trials < 1000:
        raise ValueError("at least 1000 trials are required")
    if rcap is not None and rcap < q:
        raise ValueError(f"reconstruction cap {rcap} below q={q}")
    sizes = [min(CHUNK, trials - s) for s in range(0, trials, CHUNK)]
    jobs = [(target, tuple(idx), q, grid_N, seed, c, n, iv, kind, rcap)
            for c, n in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            diffs = list(pool.map(lambda a: _chunk(*a), jobs))
    else:
        diffs = [_chunk(*a) for a in jobs]
    d = np.concatenate(diffs)
    sq = d * d
    return MCEstimate(float(np.mean(d)), float(np.mean(sq)),
                      float(np.std(sq, ddof=1) / math.sqrt(d.size)), int(d.size), int(grid_N))
