# tests/test_bargmann.py
import math

import numpy as np
import pytest

from hardyhermite.bargmann import (
    W_LIMIT,
    ContourSpec,
    auto_transform,
    bargmann_eval,
    bargmann_eval_many,
    bargmann_phi_closed,
    coeff_from_contour,
    contour_coefficients,
    contour_radius,
    fock_norm,
    log_factorial,
    paired_taylor_coeff_contour,
    pairing_factor,
    taylor_coeff_contour,
    transform_sampler,
)
from hardyhermite.exceptions import ContourError, DomainError, PreconditionError
from hardyhermite.hardy_family import (
    GaussianParam,
    HardyParams,
    HermiteCombination,
    basis,
    extremal_z,
    gaussian_coeff_recurrence,
)
from hardyhermite.hermite_basis import CoeffMethod, coeff_agreement
from hardyhermite.numerics.quadrature import gauss_hermite_rule
from hardyhermite.numerics.scaled import ScaledComplex, rel_diff

SAMPLE_W = 4.0 * np.exp(1j * (2.0 * np.pi * np.arange(20) / 20 + 0.1))


def test_log_factorial():
    assert log_factorial(0) == 0.0
    assert log_factorial(10) == pytest.approx(math.log(3628800.0), rel=1e-15)
    assert log_factorial(400) == pytest.approx(math.lgamma(401.0), rel=1e-14)
    with pytest.raises(DomainError):
        log_factorial(-1)


def test_pairing_factor():
    assert pairing_factor(0).to_complex().real == pytest.approx(math.pi**0.25)
    assert pairing_factor(3).to_complex().real == pytest.approx(math.sqrt(8 * 6 * math.sqrt(math.pi)))


def test_contour_radius(hp_quarter):
    assert contour_radius(20, hp_quarter.mu) == pytest.approx((4 * 20 * 22 * math.e) ** 0.25)
    with pytest.raises(DomainError):
        contour_radius(0, hp_quarter.mu)
    with pytest.raises(DomainError):
        contour_radius(3, 0.0)


def test_contour_spec_validation(hp_quarter):
    spec = ContourSpec.from_hardy(10, hp_quarter)
    assert spec.samples == 256
    assert ContourSpec.from_hardy(100, hp_quarter).samples == 1024
    assert np.abs(spec.points()) == pytest.approx(np.full(256, spec.radius))
    with pytest.raises(ContourError):
        ContourSpec(n=10, radius=2.0, samples=96)
    with pytest.raises(ContourError):
        ContourSpec(n=10, radius=2.0, samples=300)
    with pytest.raises(ContourError):
        ContourSpec(n=10, radius=0.0, samples=256)
    with pytest.raises(ContourError):
        ContourSpec(n=0, radius=1.0, samples=256)


@pytest.mark.parametrize("n", [0, 1, 5, 17, 30])
def test_basis_transform_matches_closed_form(n, rule200):
    quad = bargmann_eval_many(basis(n), SAMPLE_W, rule200)
    closed = bargmann_phi_closed(n, SAMPLE_W)
    worst = max(rel_diff(q, c) for q, c in zip(quad.to_list(), closed.to_list()))
    assert worst <= 1e-9


def test_closed_form_scalar_and_array_agree():
    w = 1.5 - 2.0j
    scalar = bargmann_phi_closed(7, w)
    assert isinstance(scalar, ScaledComplex)
    assert rel_diff(scalar, bargmann_phi_closed(7, np.array([w]))[0]) <= 1e-14
    assert bargmann_phi_closed(0, np.array([0.0]))[0].to_complex() == pytest.approx(math.pi**-0.25)
    with pytest.raises(DomainError):
        bargmann_phi_closed(-1, w)


@pytest.mark.parametrize("z", [1.0, 0.7, complex(math.tanh(0.5), 1 / math.cosh(0.5))])
def test_gaussian_transform_matches_closed_form(z):
    p = GaussianParam(z)
    for w in (0.0, 1.0 + 2.0j, -3.0 + 0.5j):
        assert rel_diff(bargmann_eval(p, w), p.bargmann(w)) <= 1e-10


def test_transform_domain():
    with pytest.raises(DomainError, match="closed form"):
        bargmann_eval(basis(0), 60.0)


def test_auto_transform_routes_large_circles_to_the_closed_form():
    steep = HardyParams.from_t(3.0)
    f = extremal_z(3.0)
    assert contour_radius(10, steep.mu) > W_LIMIT
    assert auto_transform(f, 10, radius=contour_radius(10, steep.mu)) == "closed"
    assert auto_transform(f, 2, radius=contour_radius(2, steep.mu)) == "quadrature"
    assert auto_transform(f, 61) == "closed"
    assert auto_transform(lambda x: np.exp(-x * x), 10, radius=100.0) == "quadrature"


def test_coefficients_past_the_quadrature_limit():
    steep = HardyParams.from_t(3.0)
    f = extremal_z(3.0)
    exact = gaussian_coeff_recurrence(f, 12)
    for n in (4, 10, 12):
        mode = auto_transform(f, n, radius=contour_radius(n, steep.mu))
        assert rel_diff(coeff_from_contour(f, n, steep, transform=mode), exact[n]) <= 1e-8


def test_fock_norm_is_the_l2_norm(chirped):
    assert fock_norm(basis(0).bargmann) == pytest.approx(1.0, abs=1e-6)
    assert fock_norm(basis(5).bargmann, n_eff=5) == pytest.approx(1.0, abs=1e-6)
    assert fock_norm(chirped.bargmann, r_max=16.0) == pytest.approx(chirped.l2_norm(), abs=1e-6)


def test_fock_norm_of_combination():
    g = HermiteCombination((0.6, 0.0, 0.8j))
    assert fock_norm(g.bargmann, n_eff=2) == pytest.approx(g.l2_norm(), abs=1e-6)


def test_fock_norm_truncation_detected():
    with pytest.raises(PreconditionError):
        fock_norm(basis(5).bargmann, r_max=3.0)
    with pytest.raises(DomainError):
        fock_norm(basis(0).bargmann, r_max=-1.0)


def test_contour_recovers_exponential_series():
    spec = ContourSpec.for_radius(10, 5.0)
    c10 = taylor_coeff_contour(np.exp, spec)
    assert c10.to_complex().real == pytest.approx(1.0 / math.factorial(10), rel=1e-12)


def test_contour_doubling_detects_aliasing():
    spec = ContourSpec.for_radius(1, 1.0)
    with pytest.raises(ContourError):
        taylor_coeff_contour(lambda w: 1.0 / (1.0 - w / 1.05), spec)


@pytest.mark.parametrize("n", [2, 10, 20, 40])
def test_coefficient_from_contour_matches_recurrence(n, chirped, hp_quarter):
    exact = gaussian_coeff_recurrence(chirped, n)[n]
    assert rel_diff(coeff_from_contour(chirped, n, hp_quarter), exact) <= 1e-6


def test_odd_coefficients_vanish_on_the_contour(chirped, hp_quarter):
    exact = gaussian_coeff_recurrence(chirped, 40)
    scale = math.exp(exact.values.max_log_abs())
    value = coeff_from_contour(chirped, 21, hp_quarter)
    assert value.is_zero or math.exp(value.ln_mag) <= 1e-10 * scale


def test_contour_coefficients_closed_form(chirped, hp_quarter):
    seq = contour_coefficients(chirped, hp_quarter, 120, transform="closed")
    assert seq.method is CoeffMethod.CONTOUR
    ok, worst = coeff_agreement(seq, gaussian_coeff_recurrence(chirped, 120), 1e-8)
    assert ok, worst


def test_contour_coefficients_are_independent_of_jobs(chirped, hp_quarter):
    one = contour_coefficients(chirped, hp_quarter, 30, jobs=1)
    many = contour_coefficients(chirped, hp_quarter, 30, jobs=4)
    assert one.values.to_list() == many.values.to_list()


def test_radius_independence(chirped, hp_quarter):
    sampler = transform_sampler(chirped, "quadrature")
    r = contour_radius(20, hp_quarter.mu)
    c1 = taylor_coeff_contour(sampler, ContourSpec.for_radius(20, r))
    c2 = taylor_coeff_contour(sampler, ContourSpec.for_radius(20, 1.3 * r))
    assert rel_diff(c1, c2) <= 1e-8


def test_paired_contour_integral(chirped, hp_quarter):
    n = 20
    sampler = transform_sampler(chirped, "closed")
    spec = ContourSpec.from_hardy(n, hp_quarter)
    paired = paired_taylor_coeff_contour(sampler, spec, hp_quarter.mu)
    c_n = taylor_coeff_contour(sampler, spec)
    c_n4 = taylor_coeff_contour(sampler, ContourSpec.from_hardy(n + 4, hp_quarter))
    assert rel_diff(paired, c_n + c_n4 * (4.0 * n * (n + 2) / hp_quarter.mu)) <= 1e-10


def test_transform_sampler_rejects_unknown_modes(chirped):
    with pytest.raises(DomainError):
        transform_sampler(chirped, "spline")
    with pytest.raises(DomainError):
        transform_sampler(lambda x: x, "closed")


def test_quadrature_sampler_reports_magnitudes(chirped):
    values, scale = transform_sampler(chirped, "quadrature", gauss_hermite_rule(100))(np.array([2.0 + 1.0j]))
    assert scale[0].ln_mag >= values[0].ln_mag - 1e-12
