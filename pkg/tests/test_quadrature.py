# tests/test_quadrature.py
import math

import numpy as np
import pytest

from hardyhermite.exceptions import QuadratureError
from hardyhermite.numerics.quadrature import (
    default_rule_order,
    gauss_hermite_rule,
    integrate_weighted,
    legendre_on,
)


@pytest.mark.parametrize("m", [1, 2, 7, 20, 51])
def test_matches_numpy_hermgauss(m):
    x_ref, w_ref = np.polynomial.hermite.hermgauss(m)
    rule = gauss_hermite_rule(m)
    np.testing.assert_allclose(rule.nodes, x_ref, rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(rule.weights, w_ref, rtol=1e-11)


@pytest.mark.parametrize("m", [200, 1000, 2000])
def test_weights_sum_to_sqrt_pi(m):
    rule = gauss_hermite_rule(m)
    assert rule.nodes.size == m
    assert np.all(np.diff(rule.nodes) > 0)
    total = math.fsum(np.exp(rule.log_weights))
    assert total == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_large_rule_keeps_underflowing_weights_in_log_form():
    rule = gauss_hermite_rule(2000)
    assert np.all(np.isfinite(rule.log_weights))
    assert rule.weights[0] == 0.0
    assert rule.log_weights[0] < -1000.0


def test_polynomial_exactness():
    rule = gauss_hermite_rule(10)
    value = integrate_weighted(lambda x: x**4, rule).to_complex().real
    assert value == pytest.approx(0.75 * math.sqrt(math.pi), rel=1e-14)


def test_scaled_rule():
    rule = gauss_hermite_rule(40).scaled(3.0)
    assert rule.scale == 3.0
    value = integrate_weighted(lambda x: np.ones_like(x), rule).to_complex().real
    assert value == pytest.approx(3.0 * math.sqrt(math.pi), rel=1e-14)
    with pytest.raises(QuadratureError):
        rule.scaled(0.0)


@pytest.mark.parametrize("m", [0, 2001, 2.5])
def test_order_out_of_range(m):
    with pytest.raises(QuadratureError):
        gauss_hermite_rule(m)


def test_non_finite_samples_rejected():
    with pytest.raises(QuadratureError):
        integrate_weighted(lambda x: np.full_like(x, np.nan), gauss_hermite_rule(5))


def test_default_rule_order():
    assert default_rule_order(10) == 200
    assert default_rule_order(100) == 400
    assert default_rule_order(1000) == 2000


def test_legendre_on_interval():
    x, w = legendre_on(0.0, 2.0, 20)
    assert float(np.sum(w * x**3)) == pytest.approx(4.0, rel=1e-14)
    assert x.min() > 0.0 and x.max() < 2.0


@pytest.mark.parametrize("m", [5, 20, 100, 400])
def test_even_moments_are_exact(m):
    rule = gauss_hermite_rule(m)
    for k in range(min(m, 12)):
        value = integrate_weighted(lambda x: x ** (2 * k), rule).to_complex().real
        assert value == pytest.approx(math.gamma(k + 0.5), rel=1e-10)
