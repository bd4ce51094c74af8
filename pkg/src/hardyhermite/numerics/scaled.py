# src/hardyhermite/numerics/scaled.py
"""
Scaled complex arithmetic.

A value is held as a complex mantissa with modulus in [0.5, 1) and an integer
power-of-two exponent. Quantities such as e^{-nt}, e^{n/2}, 2^n n! or
(sqrt(mu) e / 2n)^{n/2} therefore stay representable far outside the double
range, and conversion to and from an ordinary complex number is exact.

`ScaledComplex` is the scalar type; `ScaledArray` is its vectorized sibling used
on quadrature nodes and contour samples.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from hardyhermite.exceptions import DomainError

LN2 = math.log(2.0)
LOG10_2 = math.log10(2.0)

# A sum whose residual mantissa falls below this is the zero element.
ZERO_RESIDUAL = 1e-300

# Shifting a mantissa by fewer than this many binary places underflows to 0.
_MIN_SHIFT = -1100
_NO_EXPONENT = -(2**62)

Number = Union[int, float, complex]


def normalize_phase(phase: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    p = math.remainder(phase, 2.0 * math.pi)
    return math.pi if p <= -math.pi else p


def _unit(phase: float) -> complex:
    # exact on the axis directions so that x + (-x) cancels to the zero element
    if phase == 0.0:
        return 1.0 + 0.0j
    if phase == math.pi or phase == -math.pi:
        return -1.0 + 0.0j
    if phase == 0.5 * math.pi:
        return 1.0j
    if phase == -0.5 * math.pi:
        return -1.0j
    return complex(math.cos(phase), math.sin(phase))


def _unit_array(phase: np.ndarray) -> np.ndarray:
    out = np.cos(phase) + 1j * np.sin(phase)
    out = np.where(phase == 0.0, 1.0 + 0j, out)
    out = np.where((phase == math.pi) | (phase == -math.pi), -1.0 + 0j, out)
    out = np.where(phase == 0.5 * math.pi, 1.0j, out)
    return np.where(phase == -0.5 * math.pi, -1.0j, out)


def _normalize(m: complex, e: int) -> tuple[complex, int]:
    if m == 0:
        return 0j, 0
    if not (math.isfinite(m.real) and math.isfinite(m.imag)):
        raise DomainError(f"non-finite mantissa {m!r}")
    a = abs(m)
    if math.isinf(a):
        m, e = m * 0.25, e + 2
        a = abs(m)
    _, k = math.frexp(a)
    return complex(math.ldexp(m.real, -k), math.ldexp(m.imag, -k)), e + k


@dataclass(frozen=True, eq=False)
class ScaledComplex:
    """mantissa * 2**exponent, with |mantissa| in [0.5, 1) or exactly zero."""

    mantissa: complex = 0j
    exponent: int = 0

    def __post_init__(self):
        m, e = _normalize(complex(self.mantissa), int(self.exponent))
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    # --- constructors ---
    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls(0j, 0)

    @classmethod
    def one(cls) -> "ScaledComplex":
        return cls(1.0 + 0j, 0)

    @classmethod
    def from_complex(cls, z: Number) -> "ScaledComplex":
        return cls(complex(z), 0)

    @classmethod
    def from_log(cls, ln_mag: float, phase: float = 0.0) -> "ScaledComplex":
        """Build e^{ln_mag + i phase}; ln_mag = -inf gives the zero element."""
        if ln_mag == -math.inf:
            return cls.zero()
        if not (math.isfinite(ln_mag) and math.isfinite(phase)):
            raise DomainError(f"cannot scale log-magnitude {ln_mag!r}, phase {phase!r}")
        k = math.floor(ln_mag / LN2) + 1
        frac = math.exp(ln_mag - k * LN2)
        return cls(frac * _unit(normalize_phase(phase)), k)

    @classmethod
    def from_exponent(cls, zexp: Number) -> "ScaledComplex":
        """e^{zexp} for a complex exponent."""
        zexp = complex(zexp)
        return cls.from_log(zexp.real, zexp.imag)

    # --- views ---
    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def ln_mag(self) -> float:
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * LN2

    @property
    def phase(self) -> float:
        if self.is_zero:
            return 0.0
        return normalize_phase(cmath.phase(self.mantissa))

    @property
    def log10_abs(self) -> float:
        if self.is_zero:
            return -math.inf
        return math.log10(abs(self.mantissa)) + self.exponent * LOG10_2

    def to_complex(self) -> complex:
        """Ordinary complex value; raises OverflowError beyond the double range."""
        if self.is_zero:
            return 0j
        return complex(
            math.ldexp(self.mantissa.real, self.exponent),
            math.ldexp(self.mantissa.imag, self.exponent),
        )

    def try_complex(self) -> complex | None:
        try:
            return self.to_complex()
        except OverflowError:
            return None

    def abs(self) -> "ScaledComplex":
        return ScaledComplex(abs(self.mantissa), self.exponent)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.mantissa.conjugate(), self.exponent)

    # --- arithmetic ---
    def __mul__(self, other) -> "ScaledComplex":
        other = as_scaled(other)
        return ScaledComplex(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        other = as_scaled(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero element")
        return ScaledComplex(self.mantissa / other.mantissa, self.exponent - other.exponent)

    def __rtruediv__(self, other) -> "ScaledComplex":
        return as_scaled(other) / self

    def __add__(self, other) -> "ScaledComplex":
        other = as_scaled(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        hi, lo = (self, other) if self.exponent >= other.exponent else (other, self)
        shift = max(lo.exponent - hi.exponent, _MIN_SHIFT)
        s = hi.mantissa + complex(math.ldexp(lo.mantissa.real, shift), math.ldexp(lo.mantissa.imag, shift))
        if abs(s) < ZERO_RESIDUAL:
            return ScaledComplex.zero()
        return ScaledComplex(s, hi.exponent)

    __radd__ = __add__

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-as_scaled(other))

    def __rsub__(self, other) -> "ScaledComplex":
        return as_scaled(other) - self

    def __pow__(self, k: int) -> "ScaledComplex":
        if not isinstance(k, int):
            raise TypeError("ScaledComplex only supports integer powers")
        if k < 0:
            return ScaledComplex.one() / (self ** (-k))
        result, base = ScaledComplex.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash((0j, 0) if self.is_zero else (self.mantissa, self.exponent))

    def __repr__(self) -> str:
        if self.is_zero:
            return "ScaledComplex(0)"
        return f"ScaledComplex(ln_mag={self.ln_mag:.15g}, phase={self.phase:.15g})"


def as_scaled(value) -> ScaledComplex:
    if isinstance(value, ScaledComplex):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return ScaledComplex.from_complex(complex(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as a scaled value")


def sc_mul(x: ScaledComplex, y: ScaledComplex) -> ScaledComplex:
    return x * y


def sc_add(x: ScaledComplex, y: ScaledComplex) -> ScaledComplex:
    return x + y


def sc_sum(values: Iterable[ScaledComplex]) -> ScaledComplex:
    """Sum after factoring out the largest exponent; real and imaginary parts are fsum'd."""
    items = [v for v in map(as_scaled, values) if not v.is_zero]
    if not items:
        return ScaledComplex.zero()
    e_max = max(v.exponent for v in items)
    shifts = [max(v.exponent - e_max, _MIN_SHIFT) for v in items]
    re = math.fsum(math.ldexp(v.mantissa.real, s) for v, s in zip(items, shifts))
    im = math.fsum(math.ldexp(v.mantissa.imag, s) for v, s in zip(items, shifts))
    s = complex(re, im)
    if abs(s) < ZERO_RESIDUAL:
        return ScaledComplex.zero()
    return ScaledComplex(s, e_max)


def rel_diff(x: ScaledComplex, y: ScaledComplex) -> float:
    """|x - y| / max(|x|, |y|), computed without leaving scaled arithmetic."""
    x, y = as_scaled(x), as_scaled(y)
    if x.is_zero and y.is_zero:
        return 0.0
    diff = x - y
    if diff.is_zero:
        return 0.0
    return math.exp(diff.ln_mag - max(x.ln_mag, y.ln_mag))


# --------------------------------------------------------------------------
# vectorized form
# --------------------------------------------------------------------------

def _ldexp_c(m: np.ndarray, k: np.ndarray) -> np.ndarray:
    out = np.empty(np.broadcast(m, k).shape, dtype=np.complex128)
    out.real = np.ldexp(m.real, k)
    out.imag = np.ldexp(m.imag, k)
    return out


def _normalize_arrays(m: np.ndarray, e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m, e = np.broadcast_arrays(np.asarray(m, dtype=np.complex128), np.asarray(e, dtype=np.int64))
    m, e = m.copy(), e.copy()
    if not np.all(np.isfinite(m)):
        raise DomainError("non-finite mantissa in scaled array")
    with np.errstate(over="ignore"):
        a = np.abs(m)
    big = np.isinf(a)
    if np.any(big):
        m = np.where(big, m * 0.25, m)
        e = np.where(big, e + 2, e)
        a = np.abs(m)
    _, k = np.frexp(a)
    m = _ldexp_c(m, (-k).astype(np.int32))
    e = np.where(m == 0, 0, e + k)
    return m, e


@dataclass(frozen=True, eq=False)
class ScaledArray:
    """Elementwise mantissa * 2**exponent, normalized on construction."""

    mantissa: np.ndarray
    exponent: np.ndarray

    def __post_init__(self):
        m, e = _normalize_arrays(self.mantissa, self.exponent)
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_complex(cls, values) -> "ScaledArray":
        values = np.asarray(values, dtype=np.complex128)
        return cls(values, np.zeros(values.shape, dtype=np.int64))

    @classmethod
    def from_log(cls, log_abs, phase=0.0) -> "ScaledArray":
        log_abs, phase = np.broadcast_arrays(np.asarray(log_abs, dtype=float), np.asarray(phase, dtype=float))
        if np.any(np.isnan(log_abs)) or np.any(log_abs == np.inf) or not np.all(np.isfinite(phase)):
            raise DomainError("cannot scale non-finite log-magnitudes or phases")
        finite = np.isfinite(log_abs)
        safe = np.where(finite, log_abs, 0.0)
        k = np.floor(safe / LN2).astype(np.int64) + 1
        frac = np.where(finite, np.exp(safe - k * LN2), 0.0)
        return cls(frac * _unit_array(phase), np.where(finite, k, 0))

    @classmethod
    def from_exponent(cls, zexp) -> "ScaledArray":
        zexp = np.asarray(zexp, dtype=np.complex128)
        return cls.from_log(zexp.real, zexp.imag)

    @classmethod
    def from_scalars(cls, values: Iterable[ScaledComplex]) -> "ScaledArray":
        values = [as_scaled(v) for v in values]
        return cls(
            np.array([v.mantissa for v in values], dtype=np.complex128),
            np.array([v.exponent for v in values], dtype=np.int64),
        )

    @classmethod
    def zeros(cls, shape) -> "ScaledArray":
        return cls(np.zeros(shape, dtype=np.complex128), np.zeros(shape, dtype=np.int64))

    # --- views ---
    @property
    def shape(self) -> tuple[int, ...]:
        return self.mantissa.shape

    @property
    def ndim(self) -> int:
        return self.mantissa.ndim

    def __len__(self) -> int:
        return len(self.mantissa)

    @property
    def is_zero(self) -> np.ndarray:
        return self.mantissa == 0

    def log_abs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.mantissa)) + self.exponent * LN2

    def log10_abs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log10(np.abs(self.mantissa)) + self.exponent * LOG10_2

    def phase(self) -> np.ndarray:
        p = np.angle(self.mantissa)
        return np.where(p <= -math.pi, math.pi, p)

    def to_complex(self) -> np.ndarray:
        """Ordinary complex values; entries beyond the double range become inf."""
        with np.errstate(over="ignore"):
            return _ldexp_c(self.mantissa, np.clip(self.exponent, -2000, 2000).astype(np.int32))

    def to_list(self) -> list[ScaledComplex]:
        return [ScaledComplex(complex(m), int(e)) for m, e in zip(self.mantissa.ravel(), self.exponent.ravel())]

    def __getitem__(self, idx):
        m, e = self.mantissa[idx], self.exponent[idx]
        if np.ndim(m) == 0:
            return ScaledComplex(complex(m), int(e))
        return ScaledArray(m, e)

    # --- arithmetic ---
    def _coerce(self, other) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(other, ScaledArray):
            return other.mantissa, other.exponent
        if isinstance(other, ScaledComplex):
            return np.asarray(other.mantissa), np.asarray(other.exponent)
        other = ScaledArray.from_complex(other)
        return other.mantissa, other.exponent

    def __mul__(self, other) -> "ScaledArray":
        m, e = self._coerce(other)
        return ScaledArray(self.mantissa * m, self.exponent + e)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledArray":
        m, e = self._coerce(other)
        if np.any(m == 0):
            raise ZeroDivisionError("division by the zero element")
        return ScaledArray(self.mantissa / m, self.exponent - e)

    def __add__(self, other) -> "ScaledArray":
        m2, e2 = self._coerce(other)
        m1, e1 = self.mantissa, self.exponent
        e1_eff = np.where(m1 == 0, _NO_EXPONENT, e1)
        e2_eff = np.where(m2 == 0, _NO_EXPONENT, e2)
        e_max = np.maximum(e1_eff, e2_eff)
        e_max = np.where(e_max == _NO_EXPONENT, 0, e_max)
        s1 = _ldexp_c(m1, np.clip(e1 - e_max, _MIN_SHIFT, 0).astype(np.int32))
        s2 = _ldexp_c(m2, np.clip(e2 - e_max, _MIN_SHIFT, 0).astype(np.int32))
        s = s1 + s2
        s = np.where(np.abs(s) < ZERO_RESIDUAL, 0, s)
        return ScaledArray(s, e_max)

    __radd__ = __add__

    def __neg__(self) -> "ScaledArray":
        return ScaledArray(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "ScaledArray":
        m, e = self._coerce(other)
        return self + ScaledArray(-m, e)

    def conj(self) -> "ScaledArray":
        return ScaledArray(self.mantissa.conj(), self.exponent)

    def abs(self) -> "ScaledArray":
        return ScaledArray(np.abs(self.mantissa), self.exponent)

    def sum(self, axis: int = -1) -> "ScaledArray | ScaledComplex":
        """Sum along one axis, factoring out the largest exponent on that axis."""
        m, e = self.mantissa, self.exponent
        e_eff = np.where(m == 0, _NO_EXPONENT, e)
        e_max = e_eff.max(axis=axis, keepdims=True)
        e_max = np.where(e_max == _NO_EXPONENT, 0, e_max)
        shift = np.clip(e - e_max, _MIN_SHIFT, 0).astype(np.int32)
        s = _ldexp_c(m, shift).sum(axis=axis)
        s = np.where(np.abs(s) < ZERO_RESIDUAL, 0, s)
        out = ScaledArray(s, np.squeeze(e_max, axis=axis))
        if out.ndim == 0:
            return ScaledComplex(complex(out.mantissa), int(out.exponent))
        return out

    def max_log_abs(self) -> float:
        if np.all(self.is_zero):
            return -math.inf
        return float(np.max(self.log_abs()))
