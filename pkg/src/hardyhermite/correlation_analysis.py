# src/hardyhermite/correlation_analysis.py
"""
Pair correlations of Hermite coefficients and their decay.

For f in H(tanh 2t) the combination

    S_n = a_n + n(n+2) / sqrt((n+1)(n+2)(n+3)(n+4)) e^{4t} a_{n+4}

is O(n^{-3/4} e^{-nt}), while a_n alone is O(n^{-1/4} e^{-nt}). On the Bargmann
side the same combination is sqrt(2^n n! sqrt(pi)) (c_n + 4n(n+2)/mu c_{n+4}).
"""
from __future__ import annotations

import logging
import math
from typing import NamedTuple, Sequence

import numpy as np

from hardyhermite.bargmann import (
    ContourSpec,
    as_scaled_samples,
    auto_transform,
    contour_coefficients,
    paired_taylor_coeff_contour,
    pairing_factor,
    taylor_coeff_contour,
    transform_sampler,
)
from hardyhermite.exceptions import DomainError
from hardyhermite.hardy_family import (
    HardyParams,
    basis,
    extremal_z,
    family_coefficients,
    real_gaussian,
)
from hardyhermite.hermite_basis import CoeffSeq, coeff_agreement, hermite_coeffs_quadrature
from hardyhermite.numerics.quadrature import default_rule_order, gauss_hermite_rule
from hardyhermite.numerics.scaled import ScaledComplex, rel_diff
from hardyhermite.report_models import (
    Eq12Report,
    Eq12Row,
    FitResult,
    PairReport,
    PairRow,
    ScaledValue,
    finite_or_none,
)
from hardyhermite.utils.concurrency import map_ordered

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 8
ROUTE_RTOL = 1e-6
EQ6_SLACK = 1e-9
METHODS = ("recurrence", "quadrature", "contour")


class Fit(NamedTuple):
    slope: float
    intercept: float
    residual: float


def pair_coefficient(n: int) -> float:
    """n(n+2) / sqrt((n+1)(n+2)(n+3)(n+4))."""
    return n * (n + 2) / math.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4))


def pair_sum(seq: CoeffSeq, n: int, t: float | None = None, mu: float | None = None) -> ScaledComplex:
    """S_n = a_n + pair_coefficient(n) e^{4t} a_{n+4}; with `mu` instead of t the weight is 1/mu."""
    if n < 1:
        raise DomainError(f"pair sums start at n = 1, got {n}")
    if (t is None) == (mu is None):
        raise DomainError("give exactly one of t and mu")
    log_weight = 4.0 * t if t is not None else -math.log(mu)
    tail = seq[n + 4] * ScaledComplex.from_log(log_weight + math.log(pair_coefficient(n)))
    return seq[n] + tail


def chirped_pair_identity(seq: CoeffSeq, t: float, ns: Sequence[int]) -> float:
    """Largest relative gap between S_n and 4 a_n / (n + 4) over the even n in ns, for the chirped witness."""
    worst = 0.0
    for n in ns:
        if n % 2 == 0:
            worst = max(worst, rel_diff(pair_sum(seq, n, t), seq[n] * (4.0 / (n + 4))))
    return worst


def _log_normalizer(n: int, mu: float) -> float:
    """ln(n (2n / (sqrt(mu) e))^{n/2})."""
    return math.log(n) + 0.5 * n * (math.log(2.0 * n) - 0.5 * math.log(mu) - 1.0)


def eq6_bound(values, radius: float, n: int) -> ScaledComplex:
    """
    (1/π) r^{-n} ∫_0^{2π} |cos 2t| |Bf(r e^{it})| dt, trapezoid on equispaced samples.

    Bounds |c_n + (4n(n+2)/mu) c_{n+4}| when r^4 = 4n(n+2)/mu.
    """
    values = as_scaled_samples(values)
    m = len(values)
    angles = 2.0 * math.pi * np.arange(m) / m
    weights = np.abs(np.cos(2.0 * angles)) * (2.0 / m)
    return (values.abs() * weights).sum() * ScaledComplex.from_log(-n * math.log(radius))


def _eq12_row(f, hp: HardyParams, n: int, transform: str, exact: CoeffSeq | None) -> Eq12Row:
    spec = ContourSpec.from_hardy(n, hp)
    mode = auto_transform(f, n + 4, radius=spec.radius) if transform == "auto" else transform
    sampler = transform_sampler(f, mode)
    on_circle = sampler(spec.points(2 * spec.samples))
    paired = paired_taylor_coeff_contour(lambda w: on_circle, spec, hp.mu)

    k = 4.0 * n * (n + 2) / hp.mu
    c_n = taylor_coeff_contour(lambda w: on_circle, spec)
    c_n4 = taylor_coeff_contour(sampler, ContourSpec.from_hardy(n + 4, hp))
    separate = c_n + c_n4 * k

    bound = eq6_bound(on_circle, spec.radius, n)

    norm = _log_normalizer(n, hp.mu)
    row = Eq12Row(
        n=n,
        value=0.0 if paired.is_zero else finite_or_none(math.exp(paired.ln_mag + norm)),
        separate_value=0.0 if separate.is_zero else finite_or_none(math.exp(separate.ln_mag + norm)),
        eq6_holds=paired.is_zero or paired.ln_mag <= bound.ln_mag + math.log1p(EQ6_SLACK),
    )
    if exact is not None:
        row.pairing_rel_diff = rel_diff(pairing_factor(n) * paired, pair_sum(exact, n, mu=hp.mu))
    return row


def eq12_check(
    f,
    hp: HardyParams,
    n_range: Sequence[int],
    transform: str = "auto",
    family: str = "",
    jobs: int | None = 1,
) -> Eq12Report:
    """
    |c_n + (4n(n+2)/mu) c_{n+4}| n (2n/(sqrt(mu) e))^{n/2} for n in n_range.

    The combination is taken from one contour integral and cross-checked
    against the two separately extracted coefficients and, where the family
    has exact coefficients, against the Hermite-side pair sum.
    """
    ns = sorted(set(int(n) for n in n_range))
    if not ns or ns[0] < 1:
        raise DomainError("n range must be non-empty with n >= 1")
    try:
        exact = family_coefficients(f, ns[-1] + 4)
    except AttributeError:
        exact = None
    rows = map_ordered(lambda n: _eq12_row(f, hp, n, transform, exact), ns, jobs)

    parity = getattr(f, "parity", None)
    kept = [r.value for r in rows if r.value and (parity is None or r.n % 2 == parity)]
    spread = float(max(kept) / np.median(kept)) if kept else None
    return Eq12Report(family=family, t=hp.t or 0.0, mu=hp.mu, rows=rows, max_over_median=spread)


def decay_exponent_fit_log(ns: Sequence[float], log_values: Sequence[float]) -> Fit:
    """Least squares of log value against log n; residual is the RMS deviation."""
    if len(ns) < MIN_FIT_POINTS:
        raise DomainError(f"need at least {MIN_FIT_POINTS} points, got {len(ns)}")
    x = np.log(np.asarray(ns, dtype=float))
    y = np.asarray(log_values, dtype=float)
    if not np.all(np.isfinite(y)):
        raise DomainError("log values must be finite")
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    logger.debug("Power fit slope %.6f over %d points (rms %.3g)", slope, len(ns), residual)
    return Fit(float(slope), float(intercept), residual)


def decay_exponent_fit(values: Sequence[tuple[float, float]]) -> Fit:
    """Power-law fit of (n, value) pairs; every value must be positive."""
    ns = [n for n, _ in values]
    vals = [v for _, v in values]
    if any(not v > 0 for v in vals):
        raise DomainError("power-law fit needs positive values")
    return decay_exponent_fit_log(ns, [math.log(v) for v in vals])


def decay_rate_fit(ns: Sequence[float], log_values: Sequence[float]) -> tuple[float, float]:
    """
    Fit log|a_n| = c - alpha log n - rate n; returns (rate, alpha).
    """
    if len(ns) < MIN_FIT_POINTS:
        raise DomainError(f"need at least {MIN_FIT_POINTS} points, got {len(ns)}")
    n = np.asarray(ns, dtype=float)
    design = np.column_stack([np.ones_like(n), np.log(n), n])
    coef, *_ = np.linalg.lstsq(design, np.asarray(log_values, dtype=float), rcond=None)
    return float(-coef[2]), float(-coef[1])


def is_eventually_bounded(log_values: Sequence[float]) -> bool:
    """
    The window maximum sits in its first quarter and the last quarter never
    exceeds the first quarter's maximum.
    """
    v = np.asarray(log_values, dtype=float)
    if v.size < 4:
        return True
    q = max(1, v.size // 4)
    first = float(np.max(v[:q]))
    return int(np.argmax(v)) < q and float(np.max(v[-q:])) <= first


def family_from_selector(selector: str, t: float):
    """chirped, real-gaussian or basis:K."""
    if selector == "chirped":
        return extremal_z(t)
    if selector == "real-gaussian":
        return real_gaussian(t)
    if selector.startswith("basis:"):
        try:
            k = int(selector.split(":", 1)[1])
        except ValueError as e:
            raise DomainError(f"bad basis index in {selector!r}") from e
        return basis(k)
    raise DomainError(f"unknown family {selector!r}")


def expand_methods(methods: Sequence[str] | str) -> list[str]:
    if isinstance(methods, str):
        methods = [methods]
    out: list[str] = []
    for m in methods:
        for name in METHODS if m == "all" else [m]:
            if name not in METHODS:
                raise DomainError(f"unknown method {name!r}")
            if name not in out:
                out.append(name)
    return out


def coefficient_sequences(
    f,
    hp: HardyParams,
    n_max: int,
    methods: Sequence[str],
    rule_order: int | None = None,
    min_samples: int = 256,
    jobs: int | None = 1,
) -> dict[str, CoeffSeq]:
    """a_0..a_{n_max} by each requested route."""
    seqs: dict[str, CoeffSeq] = {}
    for method in methods:
        if method == "recurrence":
            seqs[method] = family_coefficients(f, n_max)
        elif method == "quadrature":
            rule = gauss_hermite_rule(rule_order or default_rule_order(n_max))
            seqs[method] = hermite_coeffs_quadrature(f, n_max, rule)
        elif method == "contour":
            seqs[method] = contour_coefficients(f, hp, n_max, min_samples=min_samples, jobs=jobs)
    return seqs


def _norm(value: ScaledComplex, n: int, power: float, t: float) -> float:
    if value.is_zero:
        return 0.0
    return finite_or_none(math.exp(value.ln_mag + power * math.log(n) + n * t)) or 0.0


def _fit_window(ns: list[int], n_max: int, parity: int | None, nonzero: list[bool]) -> list[int]:
    lo = max(1, n_max // 8)
    return [
        i
        for i, n in enumerate(ns)
        if n >= lo and nonzero[i] and (parity is None or n % 2 == parity)
    ]


def pair_report(
    selector: str,
    t: float,
    n_min: int,
    n_max: int,
    methods: Sequence[str] | str = "recurrence",
    rule_order: int | None = None,
    min_samples: int = 256,
    jobs: int | None = 1,
) -> PairReport:
    """a_n, S_n and the normalized sequences n^{1/4} e^{nt}|a_n|, n^{3/4} e^{nt}|S_n| with power fits."""
    if n_min < 1 or n_max < n_min:
        raise DomainError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    hp = HardyParams.from_t(t)
    f = family_from_selector(selector, t)
    names = expand_methods(methods)
    seqs = coefficient_sequences(f, hp, n_max + 4, names, rule_order, min_samples, jobs)
    primary = seqs[names[0]]

    agreement = {}
    for name in names[1:]:
        _, worst = coeff_agreement(seqs[name], primary, ROUTE_RTOL)
        agreement[name] = worst

    ns = list(range(n_min, n_max + 1))
    a_vals = [primary[n] for n in ns]
    s_vals = [pair_sum(primary, n, t) for n in ns]
    rows = [
        PairRow(
            n=n,
            a=ScaledValue.from_scaled(a),
            S=ScaledValue.from_scaled(s),
            norm_a=_norm(a, n, 0.25, t),
            norm_S=_norm(s, n, 0.75, t),
        )
        for n, a, s in zip(ns, a_vals, s_vals)
    ]

    parity = getattr(f, "parity", None)
    report = PairReport(
        family=selector, t=t, a=hp.a, n_min=n_min, n_max=n_max, methods=names, rows=rows, route_agreement=agreement
    )
    if selector == "chirped":
        exact = seqs.get("recurrence")
        if exact is None:
            exact = family_coefficients(f, n_max + 4)
        report.pair_identity_rel = chirped_pair_identity(exact, t, ns)

    win_a = _fit_window(ns, n_max, parity, [not v.is_zero for v in a_vals])
    if len(win_a) >= MIN_FIT_POINTS:
        wn = [ns[i] for i in win_a]
        log_a = [a_vals[i].ln_mag for i in win_a]
        fit = decay_exponent_fit_log(wn, [la + n * t for la, n in zip(log_a, wn)])
        report.fit_a = FitResult(slope=fit.slope, intercept=fit.intercept, residual=fit.residual, n_points=len(wn))
        report.decay_rate, _ = decay_rate_fit(wn, log_a)
        norms = [rows[i].norm_a for i in win_a]
        report.norm_a_spread = max(norms) / min(norms)
        report.bounded_a = is_eventually_bounded([la + 0.25 * math.log(n) + n * t for la, n in zip(log_a, wn)])

    win_s = _fit_window(ns, n_max, parity, [not v.is_zero for v in s_vals])
    if len(win_s) >= MIN_FIT_POINTS:
        wn = [ns[i] for i in win_s]
        log_s = [s_vals[i].ln_mag for i in win_s]
        fit = decay_exponent_fit_log(wn, [ls + n * t for ls, n in zip(log_s, wn)])
        report.fit_S = FitResult(slope=fit.slope, intercept=fit.intercept, residual=fit.residual, n_points=len(wn))
        report.bounded_S = is_eventually_bounded([ls + 0.75 * math.log(n) + n * t for ls, n in zip(log_s, wn)])

    logger.debug("Pair report %s t=%g: slopes a=%s S=%s", selector, t, report.fit_a, report.fit_S)
    return report
