# src/hardyhermite/report_models.py
from __future__ import annotations

import math
from typing import List, Optional

from pydantic import BaseModel, Field, computed_field

from hardyhermite.numerics.scaled import ScaledComplex

SQRT_PI = math.sqrt(math.pi)
EXACT_JN_LIMIT = 2.0 * math.sqrt(math.e)


def finite_or_none(value: float | None) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


class ScaledValue(BaseModel):
    """A scaled quantity as (log10 |v|, phase) plus the plain value when representable."""

    log10_abs: Optional[float] = None
    phase: Optional[float] = None
    re: Optional[float] = None
    im: Optional[float] = None

    @classmethod
    def from_scaled(cls, value: ScaledComplex) -> "ScaledValue":
        if value.is_zero:
            return cls(re=0.0, im=0.0)
        plain = value.try_complex()
        return cls(
            log10_abs=finite_or_none(value.log10_abs),
            phase=finite_or_none(value.phase),
            re=finite_or_none(plain.real) if plain is not None else None,
            im=finite_or_none(plain.imag) if plain is not None else None,
        )


class FitResult(BaseModel):
    slope: float
    intercept: float
    residual: float
    n_points: int


class CoeffRow(BaseModel):
    n: int
    method: str
    value: ScaledValue


class CoeffReport(BaseModel):
    family: str
    t: float
    a: float
    n_min: int
    n_max: int
    methods: List[str]
    rows: List[CoeffRow] = Field(default_factory=list)
    agreement: dict[str, float] = Field(default_factory=dict)


class PairRow(BaseModel):
    n: int
    a: ScaledValue
    S: ScaledValue
    norm_a: Optional[float] = None
    norm_S: Optional[float] = None


class PairReport(BaseModel):
    family: str
    t: float
    a: float
    n_min: int
    n_max: int
    methods: List[str]
    rows: List[PairRow] = Field(default_factory=list)
    fit_a: Optional[FitResult] = None
    fit_S: Optional[FitResult] = None
    decay_rate: Optional[float] = None
    norm_a_spread: Optional[float] = None
    bounded_a: bool = True
    bounded_S: bool = True
    route_agreement: dict[str, float] = Field(default_factory=dict)
    pair_identity_rel: Optional[float] = None


class Eq12Row(BaseModel):
    n: int
    value: Optional[float] = None
    separate_value: Optional[float] = None
    pairing_rel_diff: Optional[float] = None
    eq6_holds: Optional[bool] = None


class Eq12Report(BaseModel):
    family: str
    t: float
    mu: float
    rows: List[Eq12Row] = Field(default_factory=list)
    max_over_median: Optional[float] = None


class AsymptoticsRow(BaseModel):
    n: int
    I: ScaledValue
    J: ScaledValue
    K: ScaledValue
    J_exact: ScaledValue
    laplace: ScaledValue
    ratio: float
    i_over_j: float
    in_upper_bound_holds: bool
    jn_lower_bound_holds: bool


class AsymptoticsReport(BaseModel):
    t: Optional[float] = None
    a: float
    mu: float
    legendre_order: int
    rows: List[AsymptoticsRow] = Field(default_factory=list)
    fitted_limit: Optional[float] = None
    sqrt_pi: float = SQRT_PI
    exact_limit: float = EXACT_JN_LIMIT
    n_min_stationary: int
    i_over_j_below_one_from: Optional[int] = None


class EnvelopeReport(BaseModel):
    family: str
    a: float
    mu: float
    fitted_C: float
    grid_r: List[float]
    grid_theta: List[float]
    violations: int
    max_ratio: float
    n_points: int
    contour_n: List[int] = Field(default_factory=list)
    contour_radii: List[float] = Field(default_factory=list)
    contour_violations: int = 0


class CheckResult(BaseModel):
    name: str
    passed: bool
    measured: Optional[float] = None
    threshold: Optional[float] = None
    detail: str = ""


class SuiteReport(BaseModel):
    command: str
    checks: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
