# src/hardyhermite/exceptions.py
from __future__ import annotations


class HardyHermiteError(Exception):
    """Base class for every error raised by hardyhermite."""


class DomainError(HardyHermiteError, ValueError):
    """A parameter lies outside the domain where the quantity is defined."""


class QuadratureError(HardyHermiteError):
    """Rule construction or weighted integration cannot proceed."""


class ContourError(HardyHermiteError):
    """Invalid contour specification or non-converged coefficient extraction."""


class PreconditionError(HardyHermiteError):
    """A numerically checked precondition (stationarity, truncation, ...) failed."""


class IndexRangeError(HardyHermiteError, IndexError):
    """A coefficient index falls outside the computed sequence."""


class UsageError(HardyHermiteError):
    """Invalid combination of command-line options."""
