# src/hardyhermite/numerics/quadrature.py
"""
Gauss–Hermite and Gauss–Legendre rules.

Gauss–Hermite nodes start from the asymptotic initial guesses of
scipy.special.roots_hermite and are polished by Newton iteration on the
orthonormal three-term recurrence. The recurrence is carried with power-of-two
rescaling, so the weights are obtained as exact logarithms even where they
underflow (m up to 2000, |x| up to ~63).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_hermite

from hardyhermite.exceptions import QuadratureError
from hardyhermite.numerics.scaled import LN2, ScaledArray, ScaledComplex

logger = logging.getLogger(__name__)

MAX_ORDER = 2000
SQRT_PI = math.sqrt(math.pi)

_RESCALE_BITS = 500
_RESCALE_AT = 2.0**_RESCALE_BITS
_NEWTON_MAX_ITER = 12


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """
    m-point rule for ∫ g(x) e^{-(x/scale)^2} dx ≈ Σ w_i g(x_i).

    `weights` may contain zeros where the true weight underflows; `log_weights`
    always carries the exact value.
    """

    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray
    order: int
    scale: float = 1.0
    _scaled_weights: ScaledArray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_scaled_weights", ScaledArray.from_log(self.log_weights))

    @property
    def scaled_weights(self) -> ScaledArray:
        return self._scaled_weights

    def scaled(self, s: float) -> "QuadratureRule":
        """Rule for the weight e^{-(x/(s*scale))^2}: nodes and weights stretched by s."""
        if not s > 0:
            raise QuadratureError(f"scale factor must be positive, got {s!r}")
        return QuadratureRule(
            nodes=self.nodes * s,
            weights=self.weights * s,
            log_weights=self.log_weights + math.log(s),
            order=self.order,
            scale=self.scale * s,
        )


def _orthonormal_hermite_pair(m: int, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    p_m(z) and p_{m-1}(z) for the orthonormal Hermite polynomials (weight e^{-x^2}),
    both multiplied by 2^{-k}; returns (p_m, p_{m-1}, k).
    """
    p_prev = np.zeros_like(z)
    p_cur = np.full_like(z, math.pi ** -0.25)
    k = np.zeros(z.shape, dtype=np.int64)
    for j in range(1, m + 1):
        p_next = z * math.sqrt(2.0 / j) * p_cur - math.sqrt((j - 1) / j) * p_prev
        p_prev, p_cur = p_cur, p_next
        big = np.abs(p_cur) > _RESCALE_AT
        if np.any(big):
            p_cur = np.where(big, np.ldexp(p_cur, -_RESCALE_BITS), p_cur)
            p_prev = np.where(big, np.ldexp(p_prev, -_RESCALE_BITS), p_prev)
            k = k + big * _RESCALE_BITS
    return p_cur, p_prev, k


@lru_cache(maxsize=32)
def gauss_hermite_rule(m: int) -> QuadratureRule:
    """m-point Gauss–Hermite rule for ∫ g(x) e^{-x^2} dx, 1 ≤ m ≤ 2000."""
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_ORDER:
        raise QuadratureError(f"rule order must be an integer in [1, {MAX_ORDER}], got {m!r}")
    m = int(m)
    guesses, _ = roots_hermite(m)
    z = np.sort(guesses)[m // 2 :].copy()
    if m % 2 == 1:
        z[0] = 0.0

    for it in range(_NEWTON_MAX_ITER):
        p_m, p_m1, _ = _orthonormal_hermite_pair(m, z)
        dz = p_m / (math.sqrt(2.0 * m) * p_m1)
        z = z - dz
        if np.max(np.abs(dz)) <= 4e-16 * max(1.0, float(np.max(z))):
            break
    logger.debug("Gauss-Hermite m=%d polished in %d Newton step(s)", m, it + 1)

    _, p_m1, k = _orthonormal_hermite_pair(m, z)
    # w = 2 / (p'_m)^2 with p'_m = sqrt(2m) p_{m-1}
    log_w = LN2 - 2.0 * (np.log(math.sqrt(2.0 * m) * np.abs(p_m1)) + k * LN2)

    if m % 2 == 1:
        nodes = np.concatenate([-z[:0:-1], z])
        log_weights = np.concatenate([log_w[:0:-1], log_w])
    else:
        nodes = np.concatenate([-z[::-1], z])
        log_weights = np.concatenate([log_w[::-1], log_w])

    return QuadratureRule(
        nodes=nodes,
        weights=np.exp(log_weights),
        log_weights=log_weights,
        order=m,
    )


def default_rule_order(n_max: int, minimum: int = 200, per_n: int = 4) -> int:
    """m = max(200, 4 n_max), capped at the largest supported order."""
    return min(MAX_ORDER, max(minimum, per_n * n_max))


def sample_scaled(g, x: np.ndarray) -> ScaledArray:
    """
    Sample g at x as a ScaledArray.

    Objects exposing `log_sample(x)` (the Hardy family members) are sampled in
    scaled form directly; any other callable is evaluated as ordinary complex.
    """
    if hasattr(g, "log_sample"):
        return g.log_sample(x)
    values = np.asarray(g(x), dtype=np.complex128)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape)
    if not np.all(np.isfinite(values)):
        raise QuadratureError("non-finite sample value at a quadrature node")
    return ScaledArray.from_complex(values)


def integrate_weighted(g: Callable | object, rule: QuadratureRule) -> ScaledComplex:
    """Σ w_i g(x_i), accumulated in scaled arithmetic."""
    samples = sample_scaled(g, rule.nodes)
    return (rule.scaled_weights * samples).sum()


@lru_cache(maxsize=32)
def gauss_legendre_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    if order < 1:
        raise QuadratureError(f"Gauss-Legendre order must be positive, got {order!r}")
    return np.polynomial.legendre.leggauss(order)


def legendre_on(lo: float, hi: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre nodes and weights mapped to [lo, hi]."""
    x, w = gauss_legendre_rule(order)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w
