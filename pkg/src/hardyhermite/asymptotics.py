# src/hardyhermite/asymptotics.py
"""
Laplace's method and the integrals I_n, J_n, K_n.

With x_n = sqrt(n(n+2))/2 the middle integral is

    J_n = ∫_{θ_0}^{π/2-θ_0} |cos 2t| e^{x_n sin 2t} dt = ∫ e^{x_n h_n(t)} dt,
    h_n(t) = sin 2t + (2 / sqrt(n(n+2))) log|cos 2t|,

and has the closed form (e^{x_n} - e^{x_n sin 2θ_0}) / x_n. I_n and K_n are the
end-sector integrals of the sine and cosine envelopes; they coincide by t -> π/2 - t.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

import numpy as np

from hardyhermite.exceptions import DomainError, PreconditionError
from hardyhermite.hardy_family import HardyParams
from hardyhermite.numerics.quadrature import legendre_on
from hardyhermite.numerics.scaled import ScaledComplex
from hardyhermite.report_models import AsymptoticsReport, AsymptoticsRow, ScaledValue
from hardyhermite.utils.concurrency import map_ordered

logger = logging.getLogger(__name__)

QUARTER_PI = 0.25 * math.pi
STATIONARITY_TOL = 1e-8
DEFAULT_LEGENDRE_ORDER = 400


def _x(n: int) -> float:
    return 0.5 * math.sqrt(n * (n + 2))


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def h_n(n: int, t: float) -> float:
    """sin 2t + (2/sqrt(n(n+2))) log|cos 2t| on (0, π/2) without π/4."""
    _check_n(n)
    if not 0.0 < t < 0.5 * math.pi or t == QUARTER_PI:
        raise DomainError(f"h_n is defined on (0, π/2) minus π/4, got t={t!r}")
    c = math.cos(2.0 * t)
    if c == 0.0:
        raise DomainError(f"log|cos 2t| is singular at t={t!r}")
    return math.sin(2.0 * t) + math.log(abs(c)) / _x(n)


def h_n_prime(n: int, t: float) -> float:
    """2 cos 2t - (4/sqrt(n(n+2))) tan 2t."""
    return 2.0 * math.cos(2.0 * t) - 2.0 * math.tan(2.0 * t) / _x(n)


def h_n_second(n: int, t: float) -> float:
    """-4 sin 2t - (8/sqrt(n(n+2))) sec^2 2t."""
    return -4.0 * math.sin(2.0 * t) - 4.0 / (_x(n) * math.cos(2.0 * t) ** 2)


def stationary_point(n: int) -> tuple[float, float]:
    """t_0 = arcsin(sqrt(n/(n+2)))/2 in (0, π/4) and h_n''(t_0) = -8(n+1)/sqrt(n(n+2))."""
    _check_n(n)
    t0 = 0.5 * math.asin(math.sqrt(n / (n + 2)))
    return t0, -8.0 * (n + 1) / math.sqrt(n * (n + 2))


def stationary_n_min(hp: HardyParams) -> int:
    """Smallest n with θ_0 <= t_0(n); the inequality then holds for every larger n."""
    s2 = hp.sin_2theta0**2
    n = max(1, math.floor(2.0 * s2 / (1.0 - s2)) - 1)
    while stationary_point(n)[0] < hp.theta0:
        n += 1
    while n > 1 and stationary_point(n - 1)[0] >= hp.theta0:
        n -= 1
    return n


def central_difference(fn: Callable[[float], float], t: float, step: float) -> float:
    return (fn(t + step) - fn(t - step)) / (2.0 * step)


def second_difference(fn: Callable[[float], float], t: float, step: float) -> float:
    return (fn(t + step) - 2.0 * fn(t) + fn(t - step)) / (step * step)


def laplace_endpoint_estimate(
    G: Callable[[float], float],
    H: Callable[[float], float],
    alpha: float,
    beta: float,
    x: float,
    dH: Callable[[float], float] | None = None,
    d2H: Callable[[float], float] | None = None,
    step: float = 1e-5,
    second_step: float = 1e-4,
) -> ScaledComplex:
    """
    ∫_α^β G(t) e^{x H(t)} dt ~ G(α) e^{x H(α)} [-π / (2 x H''(α))]^{1/2}

    for H maximal at the endpoint α with H'(α) = 0 and H''(α) < 0. Derivatives
    default to central differences.
    """
    if not beta > alpha:
        raise DomainError(f"empty interval [{alpha}, {beta}]")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    slope = dH(alpha) if dH else central_difference(H, alpha, step)
    if abs(slope) > STATIONARITY_TOL:
        raise PreconditionError(f"H'(alpha) = {slope:.3g} is not zero")
    curvature = d2H(alpha) if d2H else second_difference(H, alpha, second_step)
    if not curvature < 0:
        raise PreconditionError(f"H''(alpha) = {curvature:.3g} is not negative")
    log_value = x * H(alpha) + 0.5 * math.log(-math.pi / (2.0 * x * curvature))
    return ScaledComplex.from_log(log_value) * G(alpha)


def _log_legendre(log_integrand: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, order: int) -> float:
    t, w = legendre_on(lo, hi, order)
    terms = log_integrand(t) + np.log(w)
    peak = float(np.max(terms))
    return peak + math.log(float(np.sum(np.exp(terms - peak))))


def compute_IJK(
    n: int, hp: HardyParams, sub_order: int = DEFAULT_LEGENDRE_ORDER
) -> tuple[ScaledComplex, ScaledComplex, ScaledComplex]:
    """I_n, J_n, K_n by Gauss–Legendre on each sector; J_n is split at the kink π/4."""
    _check_n(n)
    root = math.sqrt(n * (n + 2))
    scale = root / (2.0 * math.sqrt(hp.mu))
    mu = hp.mu

    def log_i(t):
        return np.log(np.abs(np.cos(2.0 * t))) + scale * (mu + (1.0 - mu) * np.sin(t) ** 2)

    def log_j(t):
        return np.log(np.abs(np.cos(2.0 * t))) + 0.5 * root * np.sin(2.0 * t)

    def log_k(t):
        return np.log(np.abs(np.cos(2.0 * t))) + scale * (mu + (1.0 - mu) * np.cos(t) ** 2)

    th0 = hp.theta0
    log_I = _log_legendre(log_i, 0.0, th0, sub_order)
    log_J = np.logaddexp(
        _log_legendre(log_j, th0, QUARTER_PI, sub_order),
        _log_legendre(log_j, QUARTER_PI, 0.5 * math.pi - th0, sub_order),
    )
    log_K = _log_legendre(log_k, 0.5 * math.pi - th0, 0.5 * math.pi, sub_order)
    return ScaledComplex.from_log(log_I), ScaledComplex.from_log(float(log_J)), ScaledComplex.from_log(log_K)


def jn_exact(n: int, hp: HardyParams) -> ScaledComplex:
    """(e^{x} - e^{x sin 2θ_0}) / x with x = sqrt(n(n+2))/2."""
    _check_n(n)
    x = _x(n)
    gap = x * (1.0 - hp.sin_2theta0)
    return ScaledComplex.from_log(x + math.log(-math.expm1(-gap)) - math.log(x))


def laplace_prediction(n: int) -> ScaledComplex:
    """sqrt(π/((n+1)(n+2))) e^{n/2}: both halves of J_n by Laplace's method at t_0."""
    _check_n(n)
    return ScaledComplex.from_log(0.5 * n + 0.5 * math.log(math.pi / ((n + 1) * (n + 2))))


def laplace_engine_prediction(n: int) -> ScaledComplex:
    """Twice the endpoint estimate of ∫_{t_0}^{π/4} e^{x h_n(t)} dt, for cross-checking `laplace_prediction`."""
    t0, _ = stationary_point(n)
    half = laplace_endpoint_estimate(
        lambda t: 1.0,
        lambda t: h_n(n, t),
        t0,
        QUARTER_PI,
        _x(n),
        dH=lambda t: h_n_prime(n, t),
        d2H=lambda t: h_n_second(n, t),
    )
    return half * 2.0


def _bound_exponent(n: int, hp: HardyParams) -> float:
    s2 = math.sin(hp.theta0) ** 2
    return math.sqrt(n * (n + 2)) * (hp.mu + (1.0 - hp.mu) * s2) / (2.0 * math.sqrt(hp.mu))


def in_upper_bound(n: int, hp: HardyParams) -> ScaledComplex:
    """sin 2θ_0 exp(sqrt(n(n+2))(mu + (1-mu) sin^2 θ_0) / (2 sqrt(mu)))."""
    return ScaledComplex.from_log(math.log(hp.sin_2theta0) + _bound_exponent(n, hp))


def jn_lower_bound(n: int, hp: HardyParams) -> ScaledComplex:
    """2(1 - sin 2θ_0) times the same exponential as `in_upper_bound`."""
    return ScaledComplex.from_log(math.log(2.0 * (1.0 - hp.sin_2theta0)) + _bound_exponent(n, hp))


def _normalized(value: ScaledComplex, n: int) -> float:
    """value * n * e^{-n/2}."""
    return math.exp(value.ln_mag + math.log(n) - 0.5 * n)


def fit_limit(ns: Sequence[int], ratios: Sequence[float], n_floor: int = 10) -> float | None:
    """
    Constant term of a quadratic fit of the ratio in 1/n over the upper window
    n >= max(n_floor, n_max / 4). Below it the e^{x sin 2θ_0} part of J_n still
    shows, which no polynomial in 1/n absorbs.
    """
    if not ns:
        return None
    lo = max(n_floor, max(ns) // 4)
    pairs = [(n, r) for n, r in zip(ns, ratios) if n >= lo]
    if len(pairs) < 4:
        return None
    inv = np.array([1.0 / n for n, _ in pairs])
    vals = np.array([r for _, r in pairs])
    coeffs = np.polyfit(inv, vals, 2)
    return float(coeffs[-1])


def i_over_j_crossing(rows: Sequence[AsymptoticsRow], n_floor: int = 10) -> int | None:
    """Smallest tabulated n >= n_floor from which I_n / J_n stays at or below 1; None if it ends above 1."""
    tail = [r for r in rows if r.n >= n_floor]
    if not tail or tail[-1].i_over_j > 1.0:
        return None
    start = tail[0].n
    for prev, row in zip(tail, tail[1:]):
        if prev.i_over_j > 1.0:
            start = row.n
    return start


def _row(n: int, hp: HardyParams, order: int) -> AsymptoticsRow:
    i_n, j_n, k_n = compute_IJK(n, hp, order)
    j_exact = jn_exact(n, hp)
    return AsymptoticsRow(
        n=n,
        I=ScaledValue.from_scaled(i_n),
        J=ScaledValue.from_scaled(j_n),
        K=ScaledValue.from_scaled(k_n),
        J_exact=ScaledValue.from_scaled(j_exact),
        laplace=ScaledValue.from_scaled(laplace_prediction(n)),
        ratio=_normalized(j_n, n),
        i_over_j=math.exp(i_n.ln_mag - j_n.ln_mag),
        in_upper_bound_holds=i_n.ln_mag <= in_upper_bound(n, hp).ln_mag,
        jn_lower_bound_holds=j_n.ln_mag >= jn_lower_bound(n, hp).ln_mag,
    )


def jn_asymptotic_report(
    n_range: Sequence[int], hp: HardyParams, order: int = DEFAULT_LEGENDRE_ORDER, jobs: int | None = 1
) -> AsymptoticsReport:
    """Tabulates I_n, J_n, K_n and J_n n e^{-n/2} per n, with the fitted limit of the latter."""
    ns = sorted(set(int(n) for n in n_range))
    if not ns or ns[0] < 1:
        raise DomainError("n range must be non-empty with n >= 1")
    rows = map_ordered(lambda n: _row(n, hp, order), ns, jobs)
    limit = fit_limit(ns, [r.ratio for r in rows])
    logger.debug("J_n n e^{-n/2} fitted limit %s over n=%d..%d", limit, ns[0], ns[-1])
    return AsymptoticsReport(
        t=hp.t,
        a=hp.a,
        mu=hp.mu,
        legendre_order=order,
        rows=rows,
        fitted_limit=limit,
        n_min_stationary=stationary_n_min(hp),
        i_over_j_below_one_from=i_over_j_crossing(rows),
    )
