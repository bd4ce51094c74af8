# src/hardyhermite/bargmann.py
"""
Bargmann transform, Fock-space norm and contour extraction of Taylor coefficients.

    Bf(w) = (e^{-w^2/4} / sqrt(pi)) ∫ e^{xw} e^{-x^2/2} f(x) dx

maps L^2(R) isometrically onto the entire functions with
||F||^2 = ∫ |F(w)|^2 e^{-|w|^2/2} du dv / sqrt(4 pi). Writing Bf(w) = Σ c_n w^n,
the Hermite coefficients follow from <f, phi_n> = sqrt(2^n n! sqrt(pi)) c_n.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Callable, Literal

import numpy as np

from hardyhermite.exceptions import ContourError, DomainError, PreconditionError
from hardyhermite.hermite_basis import CoeffMethod, CoeffSeq
from hardyhermite.numerics.quadrature import QuadratureRule, gauss_hermite_rule, legendre_on, sample_scaled
from hardyhermite.numerics.scaled import LN2, ScaledArray, ScaledComplex
from hardyhermite.utils.concurrency import map_ordered

if TYPE_CHECKING:
    from hardyhermite.hardy_family import HardyParams

logger = logging.getLogger(__name__)

W_LIMIT = 50.0
DEFAULT_TRANSFORM_ORDER = 200
MIN_CONTOUR_SAMPLES = 256
CONTOUR_TOLERANCE = 1e-12
CONTOUR_NOISE = 1e-13
FOCK_TRUNCATION_TOLERANCE = 1e-10

_CHUNK = 256
_LOG_SQRT_PI = 0.5 * math.log(math.pi)

Transform = Literal["quadrature", "closed"]


@lru_cache(maxsize=4096)
def log_factorial(n: int) -> float:
    """ln n! by exact summation of logarithms."""
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.fsum(math.log(k) for k in range(2, n + 1))


def log_phi_norm(n: int) -> float:
    """ln sqrt(2^n n! sqrt(pi))."""
    return 0.5 * (n * LN2 + log_factorial(n) + _LOG_SQRT_PI)


def pairing_factor(n: int) -> ScaledComplex:
    """sqrt(2^n n! sqrt(pi)), the factor taking c_n to <f, phi_n>."""
    return ScaledComplex.from_log(log_phi_norm(n))


def contour_radius(n: int, mu: float) -> float:
    """(4 n (n + 2) / mu)^{1/4}."""
    if n < 1:
        raise DomainError(f"contour index must be >= 1, got {n}")
    if not mu > 0:
        raise DomainError(f"mu must be positive, got {mu!r}")
    return (4.0 * n * (n + 2) / mu) ** 0.25


def _default_samples(n: int, minimum: int = MIN_CONTOUR_SAMPLES) -> int:
    need = max(minimum, 8 * (n + 5))
    return 1 << (need - 1).bit_length()


@dataclass(frozen=True)
class ContourSpec:
    """Circle |w| = radius sampled at M equispaced angles, for coefficient index n."""

    n: int
    radius: float
    samples: int

    def __post_init__(self):
        if self.n < 1:
            raise ContourError(f"contour index must be >= 1, got {self.n}")
        if not self.radius > 0:
            raise ContourError(f"contour radius must be positive, got {self.radius!r}")
        if self.samples < 8 * (self.n + 5):
            raise ContourError(f"{self.samples} samples below the floor 8(n+5) = {8 * (self.n + 5)}")
        if self.samples & (self.samples - 1):
            raise ContourError(f"sample count must be a power of two, got {self.samples}")

    @classmethod
    def for_radius(cls, n: int, radius: float, samples: int | None = None, min_samples: int = MIN_CONTOUR_SAMPLES):
        return cls(n=n, radius=radius, samples=samples or _default_samples(n, min_samples))

    @classmethod
    def from_hardy(cls, n: int, hp: "HardyParams", samples: int | None = None, min_samples: int = MIN_CONTOUR_SAMPLES):
        return cls.for_radius(n, contour_radius(n, hp.mu), samples, min_samples)

    def angles(self, samples: int | None = None) -> np.ndarray:
        m = samples or self.samples
        return 2.0 * math.pi * np.arange(m) / m

    def points(self, samples: int | None = None) -> np.ndarray:
        return self.radius * np.exp(1j * self.angles(samples))


# --------------------------------------------------------------------------
# transform evaluation
# --------------------------------------------------------------------------

def transform_rule(f, order: int = DEFAULT_TRANSFORM_ORDER) -> QuadratureRule:
    """Gauss–Hermite rule matched to e^{-x^2/2}|f(x)| for family members exposing `envelope`."""
    env = float(getattr(f, "envelope", 1.0))
    return gauss_hermite_rule(order).scaled(math.sqrt(2.0 / (1.0 + env)))


def bargmann_eval_many(f, w, rule: QuadratureRule | None = None, with_scale: bool = False):
    """
    Bf at every point of w by quadrature.

    With `with_scale`, also returns Σ_i |term_i| per point (times the same
    prefactor), the magnitude that sets the roundoff of each value.
    """
    w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
    if np.any(np.abs(w) > W_LIMIT):
        raise DomainError(
            f"|w| must not exceed {W_LIMIT} for the quadrature transform; use the closed form on larger circles"
        )
    rule = rule or transform_rule(f)
    x = rule.nodes
    base = rule.scaled_weights * ScaledArray.from_log(-0.5 * x * x + (x / rule.scale) ** 2) * sample_scaled(f, x)

    mant, expo, smant, sexpo = [], [], [], []
    for start in range(0, w.size, _CHUNK):
        wc = w[start : start + _CHUNK]
        terms = ScaledArray.from_exponent(np.outer(wc, x)) * base
        pref = ScaledArray.from_exponent(-0.25 * wc * wc - _LOG_SQRT_PI)
        vals = terms.sum(axis=-1) * pref
        mant.append(vals.mantissa)
        expo.append(vals.exponent)
        if with_scale:
            scale = terms.abs().sum(axis=-1) * pref.abs()
            smant.append(scale.mantissa)
            sexpo.append(scale.exponent)

    values = ScaledArray(np.concatenate(mant), np.concatenate(expo))
    if with_scale:
        return values, ScaledArray(np.concatenate(smant), np.concatenate(sexpo))
    return values


def bargmann_eval(f, w: complex, rule: QuadratureRule | None = None) -> ScaledComplex:
    """Bf(w) by quadrature in scaled arithmetic."""
    return bargmann_eval_many(f, [w], rule)[0]


def bargmann_phi_closed(n: int, w):
    """B phi_n(w) = w^n / sqrt(2^n n! sqrt(pi)); scalar w gives a ScaledComplex."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if np.ndim(w) == 0:
        return ScaledComplex.from_complex(w) ** n * ScaledComplex.from_log(-log_phi_norm(n))
    w = np.asarray(w, dtype=np.complex128)
    if n == 0:
        return ScaledArray.from_log(np.full(w.shape, -log_phi_norm(0)))
    with np.errstate(divide="ignore"):
        log_abs = n * np.log(np.abs(w))
    return ScaledArray.from_log(log_abs - log_phi_norm(n), n * np.angle(w))


# --------------------------------------------------------------------------
# Fock-space norm
# --------------------------------------------------------------------------

def as_scaled_samples(values) -> ScaledArray:
    if isinstance(values, tuple):
        values = values[0]
    if isinstance(values, ScaledArray):
        return values
    if isinstance(values, ScaledComplex):
        return ScaledArray.from_scalars([values])
    return ScaledArray.from_complex(values)


def _fock_norm_sq_log(F: Callable, r_max: float, grid: tuple[int, int]) -> float:
    n_r, n_theta = grid
    s, ws = legendre_on(0.0, r_max * r_max, n_r)
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    w = (np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]).ravel()
    log_f = as_scaled_samples(F(w)).log_abs().reshape(len(s), n_theta)
    # du dv = (1/2) ds dθ; trapezoid weight in θ is 2π / N_θ
    log_terms = 2.0 * log_f - 0.5 * s[:, None] + np.log(ws)[:, None]
    peak = float(np.max(log_terms))
    if peak == -math.inf:
        return -math.inf
    total = float(np.sum(np.exp(log_terms - peak)))
    return peak + math.log(total) + math.log(math.pi / n_theta) - 0.5 * math.log(4.0 * math.pi)


def fock_norm(
    F: Callable,
    r_max: float | None = None,
    grid: tuple[int, int] = (200, 256),
    n_eff: int = 0,
    check_truncation: bool = True,
) -> float:
    """
    (∫ |F(w)|^2 e^{-|w|^2/2} du dv / sqrt(4 pi))^{1/2} over the disc |w| <= r_max.

    Gauss–Legendre in s = r^2, trapezoid in θ. Without r_max the disc radius is
    2 sqrt(2 (n_eff + 10)). The truncation test recomputes at r_max + 2.
    """
    if r_max is None:
        r_max = 2.0 * math.sqrt(2.0 * (n_eff + 10))
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max!r}")
    norm = math.exp(0.5 * _fock_norm_sq_log(F, r_max, grid))
    if check_truncation:
        wider = math.exp(0.5 * _fock_norm_sq_log(F, r_max + 2.0, grid))
        change = abs(wider - norm) / max(wider, 1e-300)
        logger.debug("Fock norm %.15g at r_max=%.4g; truncation change %.3g", norm, r_max, change)
        if change > FOCK_TRUNCATION_TOLERANCE:
            raise PreconditionError(f"Fock norm not converged at r_max={r_max}: relative change {change:.3g}")
    return norm


# --------------------------------------------------------------------------
# contour extraction
# --------------------------------------------------------------------------

def _sample(F: Callable, w: np.ndarray) -> tuple[ScaledArray, ScaledArray | None]:
    out = F(w)
    if isinstance(out, tuple):
        return as_scaled_samples(out[0]), out[1]
    return as_scaled_samples(out), None


def _mode(values: ScaledArray, angles: np.ndarray, k: int, radius: float) -> ScaledComplex:
    """(1/M) Σ values_j e^{-i k θ_j} / radius^k."""
    m = len(angles)
    twiddle = ScaledArray.from_log(np.full(m, -k * math.log(radius) - math.log(m)), -k * angles)
    return (values * twiddle).sum()


def _noise_floor(values: ScaledArray, scale: ScaledArray | None, k: int, radius: float, noise: float) -> float:
    ref = scale if scale is not None else values
    return noise * math.exp(ref.max_log_abs() - k * math.log(radius)) if ref.max_log_abs() > -math.inf else 0.0


def _converged(coarse: ScaledComplex, fine: ScaledComplex, floor: float, tol: float) -> bool:
    diff = coarse - fine
    if diff.is_zero:
        return True
    allowance = tol * math.exp(fine.ln_mag) + floor if not fine.is_zero else floor
    return math.exp(diff.ln_mag) <= allowance


def taylor_coeff_contour(
    F: Callable,
    spec: ContourSpec,
    tol: float = CONTOUR_TOLERANCE,
    noise: float = CONTOUR_NOISE,
) -> ScaledComplex:
    """
    c_n = (1/M) Σ_k F(r e^{iθ_k}) e^{-inθ_k} / r^n, θ_k = 2πk/M.

    F takes an array of points and returns complex values, a ScaledArray, or a
    (values, magnitude) pair where magnitude bounds the roundoff of each value.
    The sum is formed with M and 2M samples; the 2M value is returned and the
    change must stay within tol relative or the roundoff floor.
    """
    fine_angles = spec.angles(2 * spec.samples)
    values, scale = _sample(F, spec.radius * np.exp(1j * fine_angles))
    fine = _mode(values, fine_angles, spec.n, spec.radius)
    coarse = _mode(values[::2], fine_angles[::2], spec.n, spec.radius)
    floor = _noise_floor(values, scale, spec.n, spec.radius, noise)
    logger.debug("Contour n=%d r=%.6g M=%d: |c|=%.6g", spec.n, spec.radius, spec.samples, math.exp(fine.ln_mag) if not fine.is_zero else 0.0)
    if not _converged(coarse, fine, floor, tol):
        raise ContourError(f"contour coefficient n={spec.n} not converged with M={spec.samples} samples")
    return fine


def paired_taylor_coeff_contour(
    F: Callable,
    spec: ContourSpec,
    mu: float,
    tol: float = CONTOUR_TOLERANCE,
    noise: float = CONTOUR_NOISE,
) -> ScaledComplex:
    """
    c_n + (4 n (n + 2) / mu) c_{n+4} as one contour integral of
    (w^4 + 4 n (n + 2) / mu) F(w) / w^{n+5}.
    """
    n = spec.n
    k = 4.0 * n * (n + 2) / mu
    fine_angles = spec.angles(2 * spec.samples)
    w = spec.radius * np.exp(1j * fine_angles)
    values, scale = _sample(F, w)
    factor = ScaledArray.from_complex(w**4 + k)
    combined = values * factor
    fine = _mode(combined, fine_angles, n + 4, spec.radius)
    coarse = _mode(combined[::2], fine_angles[::2], n + 4, spec.radius)
    ref = scale * factor.abs() if scale is not None else combined
    floor = _noise_floor(combined, ref, n + 4, spec.radius, noise)
    if not _converged(coarse, fine, floor, tol):
        raise ContourError(f"paired contour coefficient n={n} not converged with M={spec.samples} samples")
    return fine


def transform_sampler(f, transform: Transform = "quadrature", rule: QuadratureRule | None = None) -> Callable:
    """Point sampler for Bf: quadrature (with roundoff magnitudes) or the family's closed form."""
    if transform == "closed":
        if not hasattr(f, "bargmann"):
            raise DomainError(f"{type(f).__name__} has no closed-form Bargmann transform")
        return f.bargmann
    if transform != "quadrature":
        raise DomainError(f"unknown transform {transform!r}")
    rule = rule or transform_rule(f)
    return lambda w: bargmann_eval_many(f, w, rule, with_scale=True)


def coeff_from_contour(
    f,
    n: int,
    hp: "HardyParams",
    rule: QuadratureRule | None = None,
    transform: Transform = "quadrature",
    samples: int | None = None,
    min_samples: int = MIN_CONTOUR_SAMPLES,
    tol: float = CONTOUR_TOLERANCE,
) -> ScaledComplex:
    """<f, phi_n> = sqrt(2^n n! sqrt(pi)) c_n with c_n read off γ_n."""
    spec = ContourSpec.from_hardy(n, hp, samples, min_samples)
    c_n = taylor_coeff_contour(transform_sampler(f, transform, rule), spec, tol=tol)
    return pairing_factor(n) * c_n


def auto_transform(f, n: int, closed_above: int = 60, radius: float | None = None) -> Transform:
    """
    Closed form beyond `closed_above`, or on circles past W_LIMIT, when the
    family has one; quadrature otherwise.
    """
    far = n > closed_above or (radius is not None and radius > W_LIMIT)
    return "closed" if far and hasattr(f, "bargmann") else "quadrature"


def contour_coefficients(
    f,
    hp: "HardyParams",
    n_max: int,
    transform: Transform | Literal["auto"] = "auto",
    rule: QuadratureRule | None = None,
    min_samples: int = MIN_CONTOUR_SAMPLES,
    jobs: int | None = 1,
) -> CoeffSeq:
    """
    <f, phi_n> for n = 0..n_max, each read off its own circle γ_n.

    The n = 0 entry is sqrt(sqrt(pi)) Bf(0), since c_0 = Bf(0).
    """

    def one(n: int) -> ScaledComplex:
        mode = auto_transform(f, n, radius=contour_radius(n, hp.mu)) if transform == "auto" else transform
        if n == 0:
            return pairing_factor(0) * as_scaled_samples(transform_sampler(f, mode, rule)(np.zeros(1)))[0]
        return coeff_from_contour(f, n, hp, rule=rule, transform=mode, min_samples=min_samples)

    values = map_ordered(one, range(n_max + 1), jobs)
    logger.debug("Contour coefficients up to n=%d (%s)", n_max, transform)
    return CoeffSeq(
        values=ScaledArray.from_scalars(values),
        method=CoeffMethod.CONTOUR,
        params={"n_max": n_max, "mu": hp.mu, "transform": transform},
    )
