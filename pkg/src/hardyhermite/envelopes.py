# src/hardyhermite/envelopes.py
"""
Pointwise envelopes for |Bf| when f is in H(a), with mu = (1 - a)/(1 + a):

    sine    exp((mu + (1 - mu) sin^2 θ) r^2 / 4)            every θ
    cosine  exp((mu + (1 - mu) cos^2 θ) r^2 / 4)            every θ
    sector  exp(sqrt(mu) |sin 2θ| r^2 / 4)                  θ mod π/2 in [θ_0, π/2 - θ_0]

each times sqrt(2/(1 + a)) and an f-dependent constant C.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from hardyhermite.bargmann import as_scaled_samples, contour_radius, transform_sampler
from hardyhermite.hardy_family import HardyParams, is_member
from hardyhermite.exceptions import PreconditionError
from hardyhermite.report_models import EnvelopeReport
from hardyhermite.utils.concurrency import map_ordered

logger = logging.getLogger(__name__)

VIOLATION_SLACK = 1e-12
DEFAULT_CONTOUR_CHECK_N = (50, 100, 200, 400)


def log_envelope_bound(hp: HardyParams, r, theta) -> np.ndarray:
    """Logarithm of the smallest applicable envelope, vectorized over r and θ."""
    r = np.asarray(r, dtype=float)
    theta = np.mod(np.asarray(theta, dtype=float), 2.0 * math.pi)
    mu = hp.mu
    quarter_r2 = 0.25 * r * r
    s2 = np.sin(theta) ** 2
    e3 = (mu + (1.0 - mu) * s2) * quarter_r2
    e4 = (mu + (1.0 - mu) * (1.0 - s2)) * quarter_r2
    best = np.minimum(e3, e4)

    reduced = np.mod(theta, 0.5 * math.pi)
    in_sector = (reduced >= hp.theta0) & (reduced <= 0.5 * math.pi - hp.theta0)
    e5 = math.sqrt(mu) * np.abs(np.sin(2.0 * theta)) * quarter_r2
    best = np.where(in_sector, np.minimum(best, e5), best)
    return 0.5 * math.log(2.0 / (1.0 + hp.a)) + best


def envelope_bound(hp: HardyParams, r: float, theta: float) -> float:
    return float(np.exp(log_envelope_bound(hp, r, theta)))


def _log_abs_transform(sampler, r: np.ndarray, theta: np.ndarray) -> np.ndarray:
    w = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    return as_scaled_samples(sampler(w)).log_abs().reshape(len(r), len(theta))


def verify_envelope(
    f,
    hp: HardyParams,
    grid: tuple[int, int] = (100, 100),
    r_max: float = 12.0,
    r_min: float = 0.1,
    fit_stride: int = 4,
    contour_n=DEFAULT_CONTOUR_CHECK_N,
    transform: str = "closed",
    family: str = "",
    jobs: int | None = 1,
) -> EnvelopeReport:
    """
    Fit C as the largest |Bf| / envelope on every `fit_stride`-th grid point,
    then count points of the full grid, and of the circles |w| = r_n, where
    |Bf| exceeds C * envelope * (1 + 1e-12).
    """
    if not is_member(f, hp.a):
        raise PreconditionError(f"test function is not in H({hp.a})")
    n_r, n_theta = grid
    r = np.geomspace(r_min, r_max, n_r)
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    sampler = transform_sampler(f, transform)

    rows = map_ordered(lambda ri: _log_abs_transform(sampler, np.array([ri]), theta)[0], list(r), jobs)
    log_ratio = np.vstack(rows) - log_envelope_bound(hp, r[:, None], theta[None, :])

    log_c = float(np.max(log_ratio[::fit_stride, ::fit_stride]))
    threshold = log_c + math.log1p(VIOLATION_SLACK)
    violations = int(np.count_nonzero(log_ratio > threshold))
    max_ratio = math.exp(float(np.max(log_ratio)) - log_c)

    radii = [contour_radius(n, hp.mu) for n in contour_n]
    contour_violations = 0
    if radii:
        radii_arr = np.asarray(radii)
        contour_ratio = _log_abs_transform(sampler, radii_arr, theta) - log_envelope_bound(
            hp, radii_arr[:, None], theta[None, :]
        )
        contour_violations = int(np.count_nonzero(contour_ratio > threshold))
        max_ratio = max(max_ratio, math.exp(float(np.max(contour_ratio)) - log_c))

    logger.debug("Envelope fit C=%.6g, %d grid and %d contour violations", math.exp(log_c), violations, contour_violations)
    return EnvelopeReport(
        family=family,
        a=hp.a,
        mu=hp.mu,
        fitted_C=math.exp(log_c),
        grid_r=[float(v) for v in r],
        grid_theta=[float(v) for v in theta],
        violations=violations,
        max_ratio=max_ratio,
        n_points=n_r * n_theta,
        contour_n=list(contour_n),
        contour_radii=radii,
        contour_violations=contour_violations,
    )
