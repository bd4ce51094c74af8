# src/hardyhermite/hardy_family.py
"""
Test functions of Hardy class H(a).

Complex-width Gaussians f_z(x) = A e^{-z x^2 / 2} (Re z > 0) have closed-form
Fourier and Bargmann transforms and an exact two-term recurrence for their
Hermite coefficients. Finite combinations of Hermite functions are the second
family; they lie in H(a) for every a < 1.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from hardyhermite.bargmann import bargmann_phi_closed
from hardyhermite.exceptions import DomainError
from hardyhermite.hermite_basis import CoeffMethod, CoeffSeq, phi_table
from hardyhermite.numerics.quadrature import gauss_hermite_rule
from hardyhermite.numerics.scaled import ScaledArray, ScaledComplex

logger = logging.getLogger(__name__)

MEMBERSHIP_RTOL = 1e-12
FOURIER_RULE_ORDER = 400


@dataclass(frozen=True)
class HardyParams:
    """a in (0, 1) with mu = (1 - a)/(1 + a) and θ_0 = arctan sqrt(mu); t is set when a = tanh 2t."""

    a: float
    mu: float
    theta0: float
    t: float | None = None

    @classmethod
    def from_a(cls, a: float) -> "HardyParams":
        if not 0.0 < a < 1.0:
            raise DomainError(f"Hardy parameter a must lie in (0, 1), got {a!r}")
        mu = (1.0 - a) / (1.0 + a)
        return cls(a=a, mu=mu, theta0=math.atan(math.sqrt(mu)))

    @classmethod
    def from_t(cls, t: float) -> "HardyParams":
        if not t > 0:
            raise DomainError(f"t must be positive, got {t!r}")
        a = math.tanh(2.0 * t)
        if not a < 1.0:
            raise DomainError(f"t={t!r} too large: tanh 2t rounds to 1")
        mu = math.exp(-4.0 * t)
        return cls(a=a, mu=mu, theta0=math.atan(math.sqrt(mu)), t=t)

    @property
    def sin_2theta0(self) -> float:
        """sin 2θ_0 = 2 sqrt(mu) / (1 + mu)."""
        return 2.0 * math.sqrt(self.mu) / (1.0 + self.mu)

    @property
    def pair_weight(self) -> float:
        """1/mu, which is e^{4t} when the parameters come from t."""
        return 1.0 / self.mu


@dataclass(frozen=True)
class GaussianParam:
    """f(x) = amplitude * e^{-z x^2 / 2}."""

    z: complex
    amplitude: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        if not self.z.real > 0:
            raise DomainError(f"Gaussian width must have Re z > 0, got {self.z!r}")

    @property
    def envelope(self) -> float:
        """Decay rate b of |f(x)| = |A| e^{-b x^2 / 2}."""
        return self.z.real

    @property
    def parity(self) -> int:
        return 0

    def __call__(self, x):
        return self.amplitude * np.exp(-0.5 * self.z * np.asarray(x) ** 2)

    def log_sample(self, x) -> ScaledArray:
        return ScaledArray.from_exponent(-0.5 * self.z * np.asarray(x, dtype=float) ** 2 + cmath.log(self.amplitude))

    def bargmann(self, w):
        """sqrt(2/(1+z)) A exp(w^2 (1 - z) / (4 (1 + z))); arrays give a ScaledArray."""
        q = (1.0 - self.z) / (4.0 * (1.0 + self.z))
        c0 = 0.5 * cmath.log(2.0 / (1.0 + self.z)) + cmath.log(self.amplitude)
        vals = ScaledArray.from_exponent(q * np.asarray(w, dtype=np.complex128) ** 2 + c0)
        return vals[()] if vals.ndim == 0 else vals

    def l2_norm(self) -> float:
        """(π / Re z)^{1/4} |A|."""
        return abs(self.amplitude) * (math.pi / self.z.real) ** 0.25

    def fourier_transform(self) -> "GaussianParam":
        prefactor, p_hat = gaussian_fourier(self)
        return GaussianParam(p_hat.z, self.amplitude * prefactor)


@dataclass(frozen=True)
class HermiteCombination:
    """f = Σ_k alpha_k phi_k."""

    alpha: tuple[complex, ...] = field(default=(1.0 + 0j,))

    def __post_init__(self):
        if not self.alpha:
            raise DomainError("a Hermite combination needs at least one coefficient")
        object.__setattr__(self, "alpha", tuple(complex(c) for c in self.alpha))

    @property
    def envelope(self) -> float:
        return 1.0

    @property
    def top(self) -> int:
        return len(self.alpha) - 1

    @property
    def parity(self) -> int | None:
        if all(c == 0 for c in self.alpha[1::2]):
            return 0
        if all(c == 0 for c in self.alpha[0::2]):
            return 1
        return None

    def log_sample(self, x) -> ScaledArray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        coeffs = ScaledArray.from_complex(np.asarray(self.alpha)[:, None])
        out = (phi_table(self.top, x) * coeffs).sum(axis=0)
        return out if isinstance(out, ScaledArray) else ScaledArray.from_scalars([out])

    def __call__(self, x):
        return self.log_sample(x).to_complex()

    def bargmann(self, w):
        scalar = np.ndim(w) == 0
        w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
        total = ScaledArray.zeros(w.shape)
        for k, c in enumerate(self.alpha):
            if c != 0:
                total = total + bargmann_phi_closed(k, w) * c
        return total[0] if scalar else total

    def l2_norm(self) -> float:
        return math.sqrt(math.fsum(abs(c) ** 2 for c in self.alpha))

    def fourier_transform(self) -> "HermiteCombination":
        # phi_k is an eigenfunction of the Fourier transform with eigenvalue (-i)^k
        return HermiteCombination(tuple(c * (-1j) ** k for k, c in enumerate(self.alpha)))

    def coefficients(self, n_max: int) -> CoeffSeq:
        vals = np.zeros(n_max + 1, dtype=np.complex128)
        k = min(n_max, self.top) + 1
        vals[:k] = self.alpha[:k]
        return CoeffSeq(ScaledArray.from_complex(vals), CoeffMethod.RECURRENCE, {"n_max": n_max})


def basis(k: int) -> HermiteCombination:
    """phi_k as a family member."""
    if k < 0:
        raise DomainError(f"basis index must be non-negative, got {k}")
    return HermiteCombination(tuple([0j] * k + [1.0 + 0j]))


def gaussian_eval(p: GaussianParam, x: float) -> complex:
    return complex(p(x))


def gaussian_fourier(p: GaussianParam) -> tuple[complex, GaussianParam]:
    """f̂_z(ξ) = z^{-1/2} e^{-ξ^2/(2z)}: returns (z^{-1/2}, width 1/z), principal branch."""
    return 1.0 / cmath.sqrt(p.z), GaussianParam(1.0 / p.z)


def hardy_membership(p: GaussianParam, a: float) -> tuple[bool, float]:
    """Re z >= a and Re(1/z) >= a, with C = max(1, |z|^{-1/2})."""
    if not 0.0 < a < 1.0:
        raise DomainError(f"Hardy parameter a must lie in (0, 1), got {a!r}")
    slack = a * (1.0 - MEMBERSHIP_RTOL)
    member = p.z.real >= slack and (1.0 / p.z).real >= slack
    return member, max(1.0, abs(p.z) ** -0.5)


def is_member(f, a: float) -> bool:
    """Membership in H(a) for either family; finite Hermite combinations belong to every H(a), a < 1."""
    if isinstance(f, GaussianParam):
        return hardy_membership(f, a)[0]
    if not 0.0 < a < 1.0:
        raise DomainError(f"Hardy parameter a must lie in (0, 1), got {a!r}")
    return True


def extremal_z(t: float) -> GaussianParam:
    """z = tanh 2t + i sech 2t, on the unit circle with Re z = tanh 2t."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return GaussianParam(complex(math.tanh(2.0 * t), 1.0 / math.cosh(2.0 * t)))


def real_gaussian(t: float) -> GaussianParam:
    """z = tanh 2t, the real Gaussian g_a with a = tanh 2t."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return GaussianParam(complex(math.tanh(2.0 * t), 0.0))


def gaussian_coeff_recurrence(p: GaussianParam, n_max: int) -> CoeffSeq:
    """
    a_0 = sqrt(2) π^{1/4} A (1 + z)^{-1/2}, odd entries zero and
    a_{n+2} = sqrt((n + 1)/(n + 2)) (1 - z)/(1 + z) a_n.
    """
    if p.z == -1:
        raise DomainError("z = -1 is a pole of the coefficient recurrence")
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    ratio = ScaledComplex.from_complex((1.0 - p.z) / (1.0 + p.z))
    a = ScaledComplex.from_complex(math.sqrt(2.0) * math.pi**0.25 * p.amplitude / cmath.sqrt(1.0 + p.z))
    values = [ScaledComplex.zero()] * (n_max + 1)
    for n in range(0, n_max + 1, 2):
        values[n] = a
        a = a * ratio * math.sqrt((n + 1) / (n + 2))
    return CoeffSeq(
        values=ScaledArray.from_scalars(values),
        method=CoeffMethod.RECURRENCE,
        params={"z": p.z, "n_max": n_max},
    )


def family_coefficients(f, n_max: int) -> CoeffSeq:
    """Exact coefficients for either family."""
    if isinstance(f, GaussianParam):
        return gaussian_coeff_recurrence(f, n_max)
    return f.coefficients(n_max)


def fourier_quadrature(f, xi: float, order: int = FOURIER_RULE_ORDER) -> complex:
    """(2π)^{-1/2} ∫ f(x) e^{-iξx} dx on a Gauss–Hermite rule stretched to |f|'s envelope."""
    s = math.sqrt(2.0 / f.envelope)
    rule = gauss_hermite_rule(order).scaled(s)
    x = rule.nodes
    terms = (
        rule.scaled_weights
        * ScaledArray.from_log((x / s) ** 2)
        * f.log_sample(x)
        * ScaledArray.from_exponent(-1j * xi * x)
    )
    return (terms.sum() * (2.0 * math.pi) ** -0.5).to_complex()


def grid_membership(f, a: float, x_max: float = 30.0, points: int = 601) -> tuple[float, float]:
    """
    ln sup_{|x| <= x_max} |f(x)| e^{a x^2/2} and the same for f̂.

    A secondary diagnostic next to `hardy_membership`: both stay bounded as
    x_max grows exactly when f is in H(a).
    """
    x = np.linspace(-x_max, x_max, points)
    sups = []
    for g in (f, f.fourier_transform()):
        sups.append(float(np.max(g.log_sample(x).log_abs() + 0.5 * a * x * x)))
    return sups[0], sups[1]
