# src/hardyhermite/main.py
"""Command dispatch: compute the selected report, write it, and turn checks into an exit code."""
from __future__ import annotations

import logging
from typing import Any, Callable

from pydantic import BaseModel

from hardyhermite import suites
from hardyhermite.asymptotics import jn_asymptotic_report
from hardyhermite.config import RunConfig
from hardyhermite.correlation_analysis import (
    ROUTE_RTOL,
    coefficient_sequences,
    expand_methods,
    family_from_selector,
    pair_report,
)
from hardyhermite.envelopes import verify_envelope
from hardyhermite.exceptions import HardyHermiteError, UsageError
from hardyhermite.hardy_family import HardyParams
from hardyhermite.hermite_basis import coeff_agreement
from hardyhermite.report_models import (
    AsymptoticsReport,
    CheckResult,
    CoeffReport,
    CoeffRow,
    EnvelopeReport,
    PairReport,
    ScaledValue,
    SuiteReport,
)
from hardyhermite.report_writer import write_csv, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2

COEFF_COLUMNS = ["n", "method", "re", "im", "log10_abs", "phase"]
PAIR_COLUMNS = ["n", "re_a", "im_a", "log10_abs_a", "re_S", "im_S", "log10_abs_S", "norm_a", "norm_S"]
LAPLACE_COLUMNS = [
    "n", "log10_I", "log10_J", "log10_K", "log10_J_exact", "log10_laplace",
    "ratio", "i_over_j", "in_upper_bound_holds", "jn_lower_bound_holds",
]
ENVELOPE_COLUMNS = ["family", "a", "mu", "fitted_C", "violations", "max_ratio", "n_points", "contour_violations"]
CHECK_COLUMNS = ["name", "passed", "measured", "threshold", "detail"]


def _params(cfg: RunConfig) -> HardyParams:
    return HardyParams.from_t(cfg.t)


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def _coeffs(cfg: RunConfig) -> tuple[CoeffReport, list[CheckResult]]:
    hp = _params(cfg)
    f = family_from_selector(cfg.family, cfg.t)
    names = expand_methods(cfg.method)
    seqs = coefficient_sequences(
        f, hp, cfg.n_max, names, cfg.rule_order_for(cfg.n_max), cfg.contour_samples, cfg.jobs
    )
    report = CoeffReport(family=cfg.family, t=cfg.t, a=hp.a, n_min=cfg.n_min, n_max=cfg.n_max, methods=names)
    for n in range(cfg.n_min, cfg.n_max + 1):
        for name in names:
            report.rows.append(CoeffRow(n=n, method=name, value=ScaledValue.from_scaled(seqs[name][n])))
    checks = []
    for name in names[1:]:
        _, worst = coeff_agreement(seqs[name], seqs[names[0]], ROUTE_RTOL)
        report.agreement[name] = worst
        checks.append(suites.make_check(f"route_agreement[{name}]", worst, 1.0, f"{name} vs {names[0]}"))
    return report, checks


def _pair(cfg: RunConfig) -> tuple[PairReport, list[CheckResult]]:
    report = pair_report(
        cfg.family, cfg.t, cfg.n_min, cfg.n_max, cfg.method,
        cfg.rule_order_for(cfg.n_max + 4), cfg.contour_samples, cfg.jobs,
    )
    return report, suites.pair_checks(report)


def _laplace(cfg: RunConfig) -> tuple[AsymptoticsReport, list[CheckResult]]:
    report = jn_asymptotic_report(range(cfg.n_min, cfg.n_max + 1), _params(cfg), cfg.legendre_order, cfg.jobs)
    return report, suites.asymptotics_checks(report)


def _envelope(cfg: RunConfig) -> tuple[EnvelopeReport, list[CheckResult]]:
    report = verify_envelope(
        family_from_selector(cfg.family, cfg.t),
        _params(cfg),
        grid=cfg.grid,
        r_max=cfg.r_max,
        r_min=cfg.r_min,
        fit_stride=cfg.fit_stride,
        contour_n=cfg.contour_check_n,
        family=cfg.family,
        jobs=cfg.jobs,
    )
    return report, suites.envelope_checks(report)


def _bargmann_check(cfg: RunConfig) -> tuple[SuiteReport, list[CheckResult]]:
    report = suites.bargmann_suite(cfg.t, cfg.fock_grid, cfg.jobs)
    return report, report.checks


def _selftest(cfg: RunConfig) -> tuple[SuiteReport, list[CheckResult]]:
    report = suites.selftest(cfg.rule_order or cfg.rule_order_min)
    return report, report.checks


COMMAND_HANDLERS: dict[str, Callable[[RunConfig], tuple[BaseModel, list[CheckResult]]]] = {
    "coeffs": _coeffs,
    "pair": _pair,
    "laplace": _laplace,
    "envelope": _envelope,
    "bargmann-check": _bargmann_check,
    "selftest": _selftest,
}


# ----------------------------------------------------------------------------
# csv rows
# ----------------------------------------------------------------------------

def _csv_rows(report: BaseModel) -> tuple[list[str], list[dict[str, Any]]]:
    if isinstance(report, CoeffReport):
        rows = [
            {"n": r.n, "method": r.method, "re": r.value.re, "im": r.value.im,
             "log10_abs": r.value.log10_abs, "phase": r.value.phase}
            for r in report.rows
        ]
        return COEFF_COLUMNS, rows
    if isinstance(report, PairReport):
        rows = [
            {"n": r.n, "re_a": r.a.re, "im_a": r.a.im, "log10_abs_a": r.a.log10_abs,
             "re_S": r.S.re, "im_S": r.S.im, "log10_abs_S": r.S.log10_abs,
             "norm_a": r.norm_a, "norm_S": r.norm_S}
            for r in report.rows
        ]
        return PAIR_COLUMNS, rows
    if isinstance(report, AsymptoticsReport):
        rows = [
            {"n": r.n, "log10_I": r.I.log10_abs, "log10_J": r.J.log10_abs, "log10_K": r.K.log10_abs,
             "log10_J_exact": r.J_exact.log10_abs, "log10_laplace": r.laplace.log10_abs,
             "ratio": r.ratio, "i_over_j": r.i_over_j,
             "in_upper_bound_holds": r.in_upper_bound_holds, "jn_lower_bound_holds": r.jn_lower_bound_holds}
            for r in report.rows
        ]
        return LAPLACE_COLUMNS, rows
    if isinstance(report, EnvelopeReport):
        return ENVELOPE_COLUMNS, [report.model_dump(include=set(ENVELOPE_COLUMNS))]
    if isinstance(report, SuiteReport):
        return CHECK_COLUMNS, [c.model_dump() for c in report.checks]
    raise UsageError(f"no CSV layout for {type(report).__name__}")


def write_report(report: BaseModel, cfg: RunConfig):
    path = cfg.output_path
    if cfg.format == "csv":
        columns, rows = _csv_rows(report)
        return write_csv(rows, columns, path)
    return write_json(report, path)


def run(config: RunConfig) -> int:
    """Run one command; 0 on success, 2 when a check inside the run fails, 1 on usage or domain errors."""
    handler = COMMAND_HANDLERS.get(config.command)
    if handler is None:
        logger.error("Unknown command %r", config.command)
        return EXIT_USAGE

    logger.info("Computing %s (t=%s, n=%d..%d, family=%s, method=%s)",
                config.command, config.t, config.n_min, config.n_max, config.family, config.method)
    try:
        report, checks = handler(config)
        write_report(report, config)
    except UsageError as e:
        logger.error("Usage error: %s", e)
        return EXIT_USAGE
    except HardyHermiteError as e:
        logger.error("%s failed: %s", config.command, e)
        return EXIT_USAGE

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning("%d of %d checks failed: %s", len(failed), len(checks), ", ".join(failed))
        return EXIT_CHECK_FAILED
    logger.info("%d checks passed", len(checks))
    return EXIT_OK
