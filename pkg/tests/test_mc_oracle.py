import math

import numpy as np
import pytest

from stochexp.basis import UNIT, BasisKind, Interval
from stochexp.errors import closed_form_error
from stochexp.expansions import ITO, STRATONOVICH
from stochexp.kernel_coeffs import WeightedKernel, build_table
from stochexp.mc_oracle import (draw_from_path, grid_allowance, ms_error_vs_truth,
                                simulate_iterated, simulate_path, tail_variables, zeta_from_path,
                                zeta_matrix)

IV = Interval(0.5, 1.5)


def test_path_determinism_and_shape():
    a = simulate_path(3, 2, 100, IV, trials=7, key=(1,))
    b = simulate_path(3, 2, 100, IV, trials=7, key=(1,))
    c = simulate_path(3, 2, 100, IV, trials=7, key=(2,))
    assert a.increments.shape == (2, 100, 7)
    assert np.array_equal(a.increments, b.increments)
    assert not np.array_equal(a.increments, c.increments)
    assert (a.N, a.m, a.h) == (100, 2, pytest.approx(0.01))


def test_single_integral_telescopes():
    path = simulate_path(1, 1, 500, IV, trials=10)
    value = simulate_iterated(path, WeightedKernel((0,)), (1,))
    assert np.allclose(value, path.increments[0].sum(axis=0), atol=1e-13)


def test_double_same_component():
    path = simulate_path(2, 1, 2000, IV, trials=10_000)
    w = path.increments[0].sum(axis=0)
    strat = simulate_iterated(path, WeightedKernel((0, 0)), (1, 1), STRATONOVICH)
    ito = simulate_iterated(path, WeightedKernel((0, 0)), (1, 1), ITO)
    # the averaged inner integral reproduces the chain rule exactly
    assert np.allclose(strat, w * w / 2, atol=1e-12)
    assert abs(strat.mean() - IV.length / 2) <= 4 * strat.std() / math.sqrt(strat.size)
    diff = ito - strat
    assert np.allclose(diff, -np.sum(path.increments[0] ** 2, axis=0) / 2, atol=1e-12)
    # quadratic variation: mean -(T - t)/2, spread (T - t)/sqrt(2N)
    assert abs(diff.mean() + IV.length / 2) <= 4 * diff.std() / math.sqrt(diff.size)
    assert diff.std() == pytest.approx(IV.length / math.sqrt(2 * path.N), rel=0.05)


def test_time_component():
    path = simulate_path(3, 1, 400, IV, trials=3)
    v = simulate_iterated(path, WeightedKernel((0, 0)), (0, 0))
    assert np.allclose(v, IV.length ** 2 / 2, rtol=1e-12)


def test_zeta_from_path():
    path = simulate_path(4, 1, 1000, IV, trials=10_000)
    z0 = zeta_from_path(path, "trig", 0, 1)
    assert np.allclose(z0, path.increments[0].sum(axis=0) / math.sqrt(IV.length), atol=1e-12)
    z = zeta_matrix(path, BasisKind.LEGENDRE, 5, 1)
    n = z.shape[1]
    assert abs(z[5].var() - 1) <= 4 * math.sqrt(2 / n)
    assert abs(np.corrcoef(z[1], z[2])[0, 1]) <= 4 / math.sqrt(n)


def test_tail_variables_standard_and_orthogonal():
    q = 3
    path = simulate_path(5, 1, 2000, UNIT, trials=10_000)
    xi, mu = tail_variables(path, q, 1)
    z = zeta_matrix(path, BasisKind.TRIG, 2 * q, 1)
    n = xi.size
    for v in (xi, mu):
        assert abs(v.var() - 1) <= 4 * math.sqrt(2 / n) + 0.01
        assert np.max(np.abs(z @ v / n)) <= 4 / math.sqrt(n)
    with pytest.raises(ValueError):
        tail_variables(path, q, 1, rcap=2)
    d = draw_from_path(path, "trig", 2 * q, q)
    assert d.q == q and np.array_equal(d.xi[0], xi)


def test_monotone_refinement():
    table0 = build_table(BasisKind.LEGENDRE, WeightedKernel((0, 0)), 0)
    table8 = build_table(BasisKind.LEGENDRE, WeightedKernel((0, 0)), 8)
    e0 = ms_error_vs_truth(table0, (1, 2), 0, 2000, 500, seed=6)
    e8 = ms_error_vs_truth(table8, (1, 2), 8, 2000, 500, seed=6)
    assert e8.error < e0.error - 4 * (e0.stderr + e8.stderr)
    # trig double integral with tails at q = 0 and q = 50
    a = ms_error_vs_truth("I00", (1, 2), 0, 1000, 400, seed=7)
    b = ms_error_vs_truth("I00", (1, 2), 50, 1000, 400, seed=7)
    assert b.error < a.error - 4 * (a.stderr + b.stderr)


def test_thread_count_does_not_change_result():
    a = ms_error_vs_truth("I00", (1, 2), 2, 1000, 200, seed=8)
    b = ms_error_vs_truth("I00", (1, 2), 2, 1000, 200, seed=8, threads=3)
    assert a == b


def test_oracle_against_closed_form_small():
    q = 2
    est = ms_error_vs_truth("I00", (1, 2), q, 4000, 2000, seed=9)
    closed = closed_form_error("e801", UNIT, q)
    assert abs(est.error - closed) <= 4 * est.stderr + grid_allowance(2, UNIT, 2000)
    assert est.trials == 4000 and est.grid_N == 2000


def test_oracle_guards():
    with pytest.raises(ValueError):
        ms_error_vs_truth("I00", (1, 2), 2, 999, 100, seed=1)
    with pytest.raises(ValueError):
        ms_error_vs_truth("I00", (1, 2), 5, 1000, 100, seed=1, rcap=4)
    path = simulate_path(1, 1, 10)
    with pytest.raises(ValueError):
        simulate_iterated(path, WeightedKernel((0, 0)), (1,))
    with pytest.raises(ValueError):
        simulate_iterated(path, WeightedKernel((0,)), (1,), "riemann")
