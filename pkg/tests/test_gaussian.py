import math

import numpy as np
import pytest

from stochexp.gaussian import from_arrays, sample, tail_weights


def test_tail_weights_examples():
    tw = tail_weights(0)
    assert tw.alpha == pytest.approx(math.pi ** 2 / 6)
    assert tw.beta == pytest.approx(math.pi ** 4 / 90)
    tw = tail_weights(1)
    assert tw.alpha == pytest.approx(0.644934, abs=1e-6)
    assert tw.beta == pytest.approx(0.082323, abs=1e-6)
    tw = tail_weights(10 ** 6)
    assert 0 < tw.alpha <= 1e-5 and 0 < tw.beta <= 1e-5


def test_tail_weights_asymptotics_and_monotonicity():
    tw = tail_weights(1000)
    assert tw.alpha * 1000 == pytest.approx(1, rel=1e-2)
    assert tw.beta * 3 * 1000 ** 3 == pytest.approx(1, rel=1e-2)
    seq = [tail_weights(q) for q in (0, 1, 2, 10, 999, 1000, 1001, 5000)]
    assert all(b.alpha < a.alpha and b.beta < a.beta for a, b in zip(seq, seq[1:]))
    with pytest.raises(ValueError):
        tail_weights(-1)


def test_tail_weights_branch_continuity():
    # direct subtraction below q = 1000, asymptotic tail above
    a, b = tail_weights(1000), tail_weights(1001)
    assert a.alpha - b.alpha == pytest.approx(1 / 1001 ** 2, rel=1e-6)


def test_determinism():
    a = sample(123, 2, 10, 5)
    b = sample(123, 2, 10, 5)
    assert np.array_equal(a.zeta, b.zeta)
    assert np.array_equal(a.xi, b.xi) and np.array_equal(a.mu, b.mu)
    c = sample(124, 2, 10, 5)
    assert not np.array_equal(a.zeta, c.zeta)


def test_slots_do_not_depend_on_shape():
    # a slot's stream is keyed by (component, index), so growing p keeps old values
    small = sample(5, 1, 3)
    big = sample(5, 3, 9)
    assert np.array_equal(small.zeta[0], big.zeta[0, :4])


def test_moments():
    n = 1_000_000
    draw = sample(99, 1, 1, 0, trials=n)
    z = draw.zeta[0, 0]
    assert abs(z.mean()) <= 4 / math.sqrt(n)
    assert 0.994 <= z.var() <= 1.006
    corr = np.corrcoef(np.stack([z, draw.zeta[0, 1], draw.xi[0], draw.mu[0]]))
    assert np.max(np.abs(corr - np.eye(4))) <= 4 / math.sqrt(n)


def test_shapes_and_validation():
    d = sample(1, 3, 4, 2, trials=7)
    assert d.zeta.shape == (3, 5, 7) and d.xi.shape == (3, 7)
    assert (d.m, d.p, d.q, d.batch_shape) == (3, 4, 2, (7,))
    with pytest.raises(ValueError):
        sample(1, 0, 4)
    with pytest.raises(ValueError):
        d.zeta[0, 0, 0] = 1.0
    w = from_arrays(np.ones((2, 3)))
    assert w.xi.shape == (2,) and not w.xi.any()
