import math
from decimal import Decimal

import numpy as np
import pytest

from stochexp.basis import UNIT, BasisKind, Interval
from stochexp.errors import (CLOSED_FORM_OF, EXACT, FORMULAS, ErrorReport, UnsupportedCase,
                             approximation_error, atom_gram, closed_form_error, error_bound,
                             exact_error_theorem3, identity_partial_sum, identity_residual,
                             offdiag_sum, projection_error, tail_functions)
from stochexp.expansions import ito_truncated
from stochexp.gaussian import sample, tail_weights
from stochexp.kernel_coeffs import WeightedKernel, build_table, unit_nodes

L, TR = BasisKind.LEGENDRE, BasisKind.TRIG
IV = Interval(-0.4, 0.9)
D = IV.length
PI = math.pi


def test_e801():
    for q in (0, 1, 10):
        expected = D ** 2 / (2 * PI ** 2) * (PI ** 2 / 6 - sum(1 / r ** 2 for r in range(1, q + 1)))
        assert closed_form_error("e801", IV, q) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("formula, q, value, factor", [
    ("e101_100", 1, "0.0459", 1), ("e101_100", 10, "0.0072", 1),
    ("e101_101", 100, "8.4261e-4", 4), ("edaug", 1000, "3.3804e-5", 4),
])
def test_table_values(formula, q, value, factor):
    got = factor * closed_form_error(formula, IV, q) / D ** (3 if formula == "e101_100" else 4)
    unit = float(Decimal(1).scaleb(Decimal(value).as_tuple().exponent))
    assert abs(got - float(value)) <= unit


def test_closed_form_consistency():
    # the longer series are the shorter ones with the tail sums expanded
    for q in (1, 7, 60):
        assert closed_form_error("e802", IV, q) == pytest.approx(closed_form_error("e101_100", IV, q), rel=1e-12)
        assert closed_form_error("e804", IV, q) == pytest.approx(closed_form_error("e101_102", IV, q), rel=1e-12)
        assert closed_form_error("e805", IV, q) == pytest.approx(closed_form_error("e101_101", IV, q), rel=1e-12)


def test_closed_forms_positive_and_decreasing():
    for formula in FORMULAS:
        errs = [closed_form_error(formula, UNIT, q) for q in (1, 3, 9, 27, 81)]
        assert all(e > 0 for e in errs)
        assert all(b < a for a, b in zip(errs, errs[1:]))
    with pytest.raises(ValueError):
        closed_form_error("e999", UNIT, 1)
    with pytest.raises(ValueError):
        closed_form_error("e801", UNIT, -1)


def test_identities():
    assert identity_residual("pi4_48", 1) == pytest.approx(2.0294, abs=1e-4)
    assert identity_residual("ninepi4_80", 1) == pytest.approx(10.9585, abs=1e-4)
    assert identity_residual("pi4_48", 10_000) == pytest.approx(3.2902e-4, abs=1e-8)
    # residuals fall like 1/q
    for which in ("pi4_48", "ninepi4_80"):
        ratio = identity_residual(which, 1000) / identity_residual(which, 2000)
        assert ratio == pytest.approx(2, rel=1e-2)
    with pytest.raises(ValueError):
        identity_residual("zeta3", 5)


def test_offdiag_sum_matches_loop():
    term = lambda a, b: 1.0 / (a * a + 3 * b)
    q = 30
    loop = math.fsum(term(a, b) for a in range(1, q + 1) for b in range(1, q + 1) if a != b)
    assert offdiag_sum(term, q) == pytest.approx(loop, rel=1e-15)
    assert identity_partial_sum("pi4_48", 1) == 0.0


def test_exact_error_examples():
    t = build_table(L, WeightedKernel((1,), IV), 1)
    assert exact_error_theorem3(t, (1,)) == pytest.approx(0, abs=1e-14)
    t = build_table(TR, WeightedKernel((0, 0), IV), 20)
    assert exact_error_theorem3(t, (1, 2)) == pytest.approx(error_bound(t) / 2, rel=1e-12)


def _mc_box_error(table, big, idx, n=200_000, seed=0):
    """Sample mean of (J^big - J^p)^2 over Ito truncations sharing one draw."""
    d = sample(seed, max(idx), max(big.orders), trials=n)
    full = ito_truncated(big, idx, d).value
    part = ito_truncated(table, idx, d).value
    return float(np.mean((full - part) ** 2))


@pytest.mark.parametrize("exps, idx", [((0, 0), (1, 1)), ((1, 0), (1, 1)), ((0, 0, 0), (1, 2, 1))])
def test_exact_error_coupled_indices(exps, idx):
    # the permutation term for repeated components, against the difference of
    # two Ito truncations (the larger one stands in for the integral)
    t = build_table(L, WeightedKernel(exps), 3)
    big = build_table(L, WeightedKernel(exps), 30 if len(exps) == 2 else 12)
    approx = _mc_box_error(t, big, idx)
    exact = exact_error_theorem3(t, idx) - exact_error_theorem3(big, idx)
    assert approx == pytest.approx(exact, rel=0.05)


def test_bound_dominance():
    for kind in (L, TR):
        for exps, idx in (((0,), (1,)), ((0, 0), (2, 2)), ((2, 0), (1, 2)), ((0, 0, 0), (3, 3, 3)),
                          ((0, 1, 0), (1, 1, 2)), ((0, 0, 0, 0), (1, 2, 1, 2))):
            for p in (0, 2, 6):
                t = build_table(kind, WeightedKernel(exps), p)
                exact = exact_error_theorem3(t, idx)
                assert error_bound(t) >= exact - 1e-15
                if len(exps) == 1:
                    assert error_bound(t) == pytest.approx(exact, abs=1e-15)
    t = build_table(TR, WeightedKernel((0, 0, 0)), 20)
    assert error_bound(t) >= 0.0072


def test_exact_error_guards():
    t = build_table(L, WeightedKernel((0, 0)), 2)
    with pytest.raises(UnsupportedCase):
        exact_error_theorem3(t, (0, 1))
    with pytest.raises(ValueError):
        exact_error_theorem3(t, (1,))
    with pytest.raises(UnsupportedCase):
        exact_error_theorem3(build_table(L, WeightedKernel((0, 0)), (1, 2)), (1, 2))


def test_error_report():
    r = ErrorReport(EXACT, 0.1, "e801", {"q": 3})
    assert r.params["q"] == 3
    with pytest.raises(ValueError):
        ErrorReport(EXACT, 0.1, "")


def test_tail_functions_are_the_series():
    q = 3
    x = unit_nodes(50)
    tw = tail_weights(q)
    r = np.arange(q + 1, 20_000)[:, None]
    saw = np.sum(np.sin(2 * PI * r * x) / r, axis=0) * math.sqrt(2 / tw.alpha)
    bern = np.sum(np.cos(2 * PI * r * x) / r ** 2, axis=0) * math.sqrt(2 / tw.beta)
    f = tail_functions(q, x)
    assert np.max(np.abs(f[1] - bern)) <= 1e-4
    # the sawtooth series converges slowly away from the jump, so compare in L2
    assert np.sqrt(np.mean((f[0] - saw) ** 2)) <= 1e-2


def test_tail_functions_normalized():
    from stochexp.basis import composite_gauss, unit_basis_matrix
    q = 4
    x, w = composite_gauss(0, 1, 4000)
    f = tail_functions(q, x)
    gram = (f * w) @ f.T
    assert gram == pytest.approx(np.eye(2), abs=1e-9)
    phi = unit_basis_matrix(TR, 2 * q + 4, x)
    cross = (phi * w) @ f.T
    assert np.max(np.abs(cross[: 2 * q + 1])) <= 1e-9
    assert cross[2 * q + 1, 0] == pytest.approx(atom_gram(q, 2 * q + 4)[2 * q + 1, 2 * q + 5], rel=1e-8)


@pytest.mark.parametrize("name", sorted(CLOSED_FORM_OF))
def test_printed_form_errors_match_closed_forms(name):
    for q in (1, 5):
        exact = approximation_error(name, q, IV)
        assert exact == pytest.approx(closed_form_error(CLOSED_FORM_OF[name], IV, q), rel=1e-9)


def test_projection_error_of_plain_box():
    # with no tail coefficients the projection error is the Parseval deficit
    t = build_table(TR, WeightedKernel((1, 0)), 6)
    a = np.zeros((9, 9))
    a[:7, :7] = t.values
    assert projection_error(a, (1, 0), 2) == pytest.approx(exact_error_theorem3(t, (1, 2)), rel=1e-12)
    with pytest.raises(ValueError):
        projection_error(np.zeros(5), (0, 0), 1)
