# src/hardyhermite/hermite_basis.py
"""
Normalized Hermite functions and Hermite coefficients.

phi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2} is generated by the
upward recurrence

    phi_{n+1}(x) = x sqrt(2/(n+1)) phi_n(x) - sqrt(n/(n+1)) phi_{n-1}(x),

seeded with phi_0(x) = pi^{-1/4} e^{-x^2/2}. The polynomial part is carried
with power-of-two rescaling and the Gaussian factor is applied in log form, so
rows for n in the thousands stay finite.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from hardyhermite.exceptions import DomainError, IndexRangeError, QuadratureError
from hardyhermite.numerics.quadrature import QuadratureRule, gauss_hermite_rule, sample_scaled
from hardyhermite.numerics.scaled import ScaledArray, ScaledComplex

logger = logging.getLogger(__name__)

PHI_X_LIMIT = 60.0
MEHLER_R_LIMIT = 0.95
AGREEMENT_FLOOR = 1e-13

_RESCALE_BITS = 500
_RESCALE_AT = 2.0**_RESCALE_BITS


class CoeffMethod(str, Enum):
    QUADRATURE = "quadrature"
    RECURRENCE = "recurrence"
    CONTOUR = "contour"


@dataclass(frozen=True)
class CoeffSeq:
    """Coefficients <f, phi_n> for n = 0..n_max, with the route that produced them."""

    values: ScaledArray
    method: CoeffMethod
    params: dict = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> ScaledComplex:
        if not 0 <= n <= self.n_max:
            raise IndexRangeError(f"coefficient index {n} outside [0, {self.n_max}]")
        return self.values[n]

    def log10_abs(self) -> np.ndarray:
        return self.values.log10_abs()

    def to_complex(self) -> np.ndarray:
        return self.values.to_complex()


def phi_table(n_max: int, x) -> ScaledArray:
    """phi_0..phi_{n_max} at every point of x; shape (n_max + 1, len(x))."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mant = np.empty((n_max + 1, x.size))
    expo = np.empty((n_max + 1, x.size), dtype=np.int64)

    p_prev = np.zeros_like(x)
    p_cur = np.full_like(x, math.pi ** -0.25)
    k = np.zeros(x.shape, dtype=np.int64)
    mant[0], expo[0] = p_cur, k
    for n in range(n_max):
        p_next = x * math.sqrt(2.0 / (n + 1)) * p_cur - math.sqrt(n / (n + 1)) * p_prev
        p_prev, p_cur = p_cur, p_next
        big = np.abs(p_cur) > _RESCALE_AT
        if np.any(big):
            p_cur = np.where(big, np.ldexp(p_cur, -_RESCALE_BITS), p_cur)
            p_prev = np.where(big, np.ldexp(p_prev, -_RESCALE_BITS), p_prev)
            k = k + big * _RESCALE_BITS
        mant[n + 1], expo[n + 1] = p_cur, k

    return ScaledArray(mant, expo) * ScaledArray.from_log(-0.5 * x * x)


def phi_eval(n_max: int, x: float) -> ScaledArray:
    """phi_0(x) .. phi_{n_max}(x) as a one-dimensional scaled array."""
    if abs(x) > PHI_X_LIMIT:
        raise DomainError(f"|x| must not exceed {PHI_X_LIMIT}, got {x!r}")
    return phi_table(n_max, [x])[:, 0]


def hermite_coeffs_quadrature(f, n_max: int, rule: QuadratureRule | None = None) -> CoeffSeq:
    """
    <f, phi_n> for n = 0..n_max by Gauss–Hermite quadrature.

    The weight e^{-(x/s)^2} of the rule is divided out in log form, so each
    term is w_i e^{(x_i/s)^2} f(x_i) phi_n(x_i) assembled without overflow.
    """
    if rule is None:
        rule = gauss_hermite_rule(max(200, 4 * n_max))
    if rule.order < 2 * n_max:
        raise QuadratureError(f"rule order {rule.order} too small for n_max={n_max} (need >= {2 * n_max})")

    x = rule.nodes
    weighted = rule.scaled_weights * ScaledArray.from_log((x / rule.scale) ** 2) * sample_scaled(f, x)
    values = (phi_table(n_max, x) * weighted).sum(axis=-1)
    logger.debug("Quadrature coefficients n_max=%d with m=%d (scale %.4g)", n_max, rule.order, rule.scale)
    return CoeffSeq(
        values=values,
        method=CoeffMethod.QUADRATURE,
        params={"n_max": n_max, "rule_order": rule.order},
    )


def orthonormality_defect(n_max: int, rule: QuadratureRule) -> float:
    """max_{i,j <= n_max} |∫ phi_i phi_j - delta_ij| under the given rule."""
    x = rule.nodes
    half_w = np.exp(0.5 * (rule.log_weights + (x / rule.scale) ** 2))
    a = phi_table(n_max, x).to_complex().real * half_w
    gram = a @ a.T
    return float(np.max(np.abs(gram - np.eye(n_max + 1))))


def coeff_agreement(x: CoeffSeq, y: CoeffSeq, rtol: float, floor: float = AGREEMENT_FLOOR) -> tuple[bool, float]:
    """
    Entrywise |x_n - y_n| <= rtol |y_n| + floor max_k |y_k| over the common range.

    Returns (agree, worst) where worst is the largest ratio of the deviation to
    its allowance; agree means worst <= 1.
    """
    n = min(len(x), len(y)) - 1
    xs, ys = x.values[: n + 1], y.values[: n + 1]
    log_dev = (xs - ys).log_abs()
    log_y = ys.log_abs()
    scale = max(ys.max_log_abs(), xs.max_log_abs())
    if scale == -math.inf:
        return True, 0.0
    with np.errstate(divide="ignore"):
        allowance = np.logaddexp(math.log(rtol) + log_y, math.log(floor) + scale)
        ratio = np.exp(log_dev - allowance)
    worst = float(np.max(ratio))
    return worst <= 1.0, worst


def mehler_kernel(r: complex, x: float, y: float) -> ScaledComplex:
    """
    Closed form of sum_n r^n phi_n(x) phi_n(y):

        pi^{-1/2} (1 - r^2)^{-1/2} exp(-(1 + r^2)(x^2 + y^2) / (2(1 - r^2)) + 2 r x y / (1 - r^2))
    """
    r = complex(r)
    if abs(r) > MEHLER_R_LIMIT:
        raise DomainError(f"|r| must not exceed {MEHLER_R_LIMIT}, got {abs(r)!r}")
    d = 1.0 - r * r
    expo = -(1.0 + r * r) * (x * x + y * y) / (2.0 * d) + 2.0 * r * x * y / d
    return ScaledComplex.from_exponent(expo - 0.5 * math.log(math.pi) - 0.5 * cmath.log(d))


def mehler_partial_sum(r: complex, x: float, y: float, n_terms: int) -> ScaledComplex:
    """sum_{n <= n_terms} r^n phi_n(x) phi_n(y)."""
    px, py = phi_eval(n_terms, x), phi_eval(n_terms, y)
    powers = ScaledArray.from_scalars(ScaledComplex.from_complex(r) ** n for n in range(n_terms + 1))
    return (powers * px * py).sum()
