# tests/test_asymptotics.py
import math
from types import SimpleNamespace

import pytest

from hardyhermite.asymptotics import (
    compute_IJK,
    fit_limit,
    h_n,
    h_n_prime,
    h_n_second,
    i_over_j_crossing,
    in_upper_bound,
    jn_asymptotic_report,
    jn_exact,
    jn_lower_bound,
    laplace_endpoint_estimate,
    laplace_engine_prediction,
    laplace_prediction,
    second_difference,
    stationary_n_min,
    stationary_point,
)
from hardyhermite.exceptions import DomainError, PreconditionError
from hardyhermite.numerics.scaled import rel_diff
from hardyhermite.suites import asymptotics_checks

JN_LIMIT = 2.0 * math.sqrt(math.e)


@pytest.mark.parametrize("n", [1, 8, 50, 400])
def test_stationary_point(n):
    t0, curvature = stationary_point(n)
    assert 0.0 < t0 < math.pi / 4
    assert abs(h_n_prime(n, t0)) <= 1e-12
    assert h_n_second(n, t0) == pytest.approx(curvature, rel=1e-12)
    assert second_difference(lambda t: h_n(n, t), t0, 1e-4) == pytest.approx(curvature, rel=1e-5)


def test_h_is_symmetric_about_the_diagonal():
    for t in (0.1, 0.4, 0.7):
        assert h_n(6, t) == pytest.approx(h_n(6, 0.5 * math.pi - t), rel=1e-13)


def test_h_domain():
    with pytest.raises(DomainError):
        h_n(2, math.pi / 4)
    with pytest.raises(DomainError):
        h_n(2, 0.0)
    with pytest.raises(DomainError):
        h_n(0, 0.3)
    # log|cos 2t| pulls h far down next to the diagonal
    assert h_n(2, math.pi / 4 - 1e-9) < -10.0


def test_stationary_n_min(hp_quarter):
    n = stationary_n_min(hp_quarter)
    assert n == 8
    assert stationary_point(n)[0] >= hp_quarter.theta0
    assert stationary_point(n - 1)[0] < hp_quarter.theta0


@pytest.mark.parametrize("n", [2, 10, 100, 200])
def test_sector_integrals(n, hp_quarter):
    i_n, j_n, k_n = compute_IJK(n, hp_quarter)
    assert rel_diff(i_n, k_n) <= 1e-12
    assert rel_diff(j_n, jn_exact(n, hp_quarter)) <= 1e-10


def test_second_middle_integral_value(hp_quarter):
    assert jn_exact(2, hp_quarter).to_complex().real == pytest.approx(0.43026, rel=1e-3)


@pytest.mark.parametrize("x", [16.0, 100.0])
def test_laplace_on_a_gaussian_endpoint(x):
    estimate = laplace_endpoint_estimate(lambda t: 1.0, lambda t: -t * t, 0.0, 1.0, x)
    exact = 0.5 * math.sqrt(math.pi / x) * math.erf(math.sqrt(x))
    assert estimate.to_complex().real == pytest.approx(exact, rel=1e-6)


def test_laplace_error_from_a_non_constant_amplitude():
    x = 400.0
    estimate = laplace_endpoint_estimate(lambda t: 1.0 + t, lambda t: -t * t, 0.0, 1.0, x).to_complex().real
    # ∫_0^1 (1 + t) e^{-x t^2} dt; the linear part is what the leading term leaves out
    exact = 0.5 * math.sqrt(math.pi / x) + 0.5 / x
    assert 1.0 - estimate / exact == pytest.approx(1.0 / (math.sqrt(math.pi * x) + 1.0), rel=1e-6)


def test_laplace_preconditions():
    with pytest.raises(PreconditionError):
        laplace_endpoint_estimate(lambda t: 1.0, lambda t: t - t * t, 0.0, 1.0, 10.0)
    with pytest.raises(PreconditionError):
        laplace_endpoint_estimate(lambda t: 1.0, lambda t: t * t, 0.0, 1.0, 10.0)
    with pytest.raises(DomainError):
        laplace_endpoint_estimate(lambda t: 1.0, lambda t: -t * t, 1.0, 0.0, 10.0)
    with pytest.raises(DomainError):
        laplace_endpoint_estimate(lambda t: 1.0, lambda t: -t * t, 0.0, 1.0, 0.0)


@pytest.mark.parametrize("n", [8, 40, 300])
def test_engine_reproduces_the_closed_prediction(n):
    assert rel_diff(laplace_engine_prediction(n), laplace_prediction(n)) <= 1e-12


def test_fitted_limit_of_the_normalized_middle_integral(hp_quarter):
    report = jn_asymptotic_report(range(150, 401, 10), hp_quarter, jobs=1)
    assert report.fitted_limit == pytest.approx(JN_LIMIT, rel=1e-2)
    assert report.exact_limit == pytest.approx(JN_LIMIT)
    assert report.n_min_stationary == 8
    assert [row.n for row in report.rows] == list(range(150, 401, 10))


def test_report_flags(hp_quarter):
    report = jn_asymptotic_report([30, 100], hp_quarter)
    for row in report.rows:
        assert row.in_upper_bound_holds
        assert row.jn_lower_bound_holds
        assert row.i_over_j < 1.0


@pytest.mark.parametrize("n", [10, 60, 200])
def test_end_sector_bound(n, hp_quarter):
    i_n, _, _ = compute_IJK(n, hp_quarter)
    assert i_n.ln_mag <= in_upper_bound(n, hp_quarter).ln_mag


@pytest.mark.parametrize("n", [30, 100])
def test_middle_integral_lower_bound(n, hp_quarter):
    assert jn_exact(n, hp_quarter).ln_mag >= jn_lower_bound(n, hp_quarter).ln_mag


def test_report_range_validation(hp_quarter):
    with pytest.raises(DomainError):
        jn_asymptotic_report([], hp_quarter)
    with pytest.raises(DomainError):
        jn_asymptotic_report([0, 5], hp_quarter)


def test_laplace_error_shrinks_as_x_grows():
    def rel_error(x):
        estimate = laplace_endpoint_estimate(lambda t: 1.0 + t, lambda t: -t * t, 0.0, 1.0, x).to_complex().real
        exact = 0.5 * math.sqrt(math.pi / x) * math.erf(math.sqrt(x)) + 0.5 * (1.0 - math.exp(-x)) / x
        return abs(estimate / exact - 1.0)

    assert rel_error(100.0) / rel_error(400.0) >= 1.3


def test_middle_integral_overtakes_the_end_sector_just_past_ten(hp_quarter):
    report = jn_asymptotic_report(range(10, 31), hp_quarter)
    assert report.rows[0].i_over_j == pytest.approx(1.0469, rel=1e-3)
    assert report.rows[1].i_over_j <= 1.0
    assert report.i_over_j_below_one_from == 11
    check = next(c for c in asymptotics_checks(report) if c.name == "I_over_J")
    assert check.passed
    assert check.measured <= 1.0


def test_i_over_j_check_needs_a_crossing(hp_quarter):
    report = jn_asymptotic_report([10], hp_quarter)
    assert report.i_over_j_below_one_from is None
    check = next(c for c in asymptotics_checks(report) if c.name == "I_over_J")
    assert not check.passed


@pytest.mark.parametrize(
    "ratios, expected",
    [
        ([1.2, 1.05, 0.98, 0.9], 12),
        ([0.9, 0.8], 10),
        ([1.2, 1.1], None),
        ([1.1, 0.9, 1.01, 0.95], 13),
    ],
)
def test_i_over_j_crossing(ratios, expected):
    rows = [SimpleNamespace(n=10 + k, i_over_j=r) for k, r in enumerate(ratios)]
    assert i_over_j_crossing(rows) == expected


def test_i_over_j_crossing_ignores_rows_below_the_floor():
    rows = [SimpleNamespace(n=n, i_over_j=r) for n, r in [(5, 3.0), (10, 0.9), (11, 0.8)]]
    assert i_over_j_crossing(rows) == 10
    assert i_over_j_crossing(rows[:1]) is None


def test_fit_limit_uses_the_upper_window():
    ns = list(range(10, 201))
    # a transient confined to small n must not move the fitted constant
    ratios = [3.0 + 1.0 / n + (5.0 if n < 50 else 0.0) for n in ns]
    assert fit_limit(ns, ratios) == pytest.approx(3.0, abs=1e-8)
    assert fit_limit([], []) is None
    assert fit_limit([10, 11, 12], [1.0, 1.0, 1.0]) is None


def test_fitted_limit_from_a_range_starting_at_ten(hp_quarter):
    report = jn_asymptotic_report(range(10, 401, 10), hp_quarter)
    assert report.fitted_limit == pytest.approx(JN_LIMIT, rel=1e-2)
