# src/hardyhermite/config.py
from __future__ import annotations

import math
import os
import pathlib
import re
from typing import Any, Literal, Sequence

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

DEFAULT_PROFILE_ENV = "HARDYHERMITE_PROFILE"
JOBS_ENV = "HARDYHERMITE_JOBS"

COMMANDS = ("coeffs", "pair", "laplace", "envelope", "bargmann-check", "selftest")
_GRID = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def _merge(a: dict, b: dict) -> dict:
    """
    Recursive merge of dict b into a; values in b win.
    """
    out = dict(a or {})
    for k, v in (b or {}).items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _load_yaml(path: pathlib.Path) -> dict:
    if not path.exists():
        return {}
    with path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def load_config(*, profile: str | None = None, root: str | None = None) -> dict:
    """
    config.example.yaml, overlaid by config.yaml if present, overlaid by
    `profiles.<name>` when a profile is given or set in HARDYHERMITE_PROFILE.
    """
    root_path = pathlib.Path(root or ".").resolve()
    cfg = _merge(_load_yaml(root_path / "config.example.yaml"), _load_yaml(root_path / "config.yaml"))

    prof_name = profile or os.getenv(DEFAULT_PROFILE_ENV)
    if prof_name:
        prof = ((cfg.get("profiles") or {}).get(prof_name)) or {}
        cfg = _merge(cfg, prof)
    return cfg


def parse_grid(value: str | Sequence[int]) -> tuple[int, int]:
    """'100x100' -> (100, 100)."""
    if isinstance(value, str):
        m = _GRID.match(value)
        if not m:
            raise ValueError(f"grid must look like NrxNtheta, got {value!r}")
        nr, nt = int(m.group(1)), int(m.group(2))
    else:
        nr, nt = (int(v) for v in value)
    if nr < 2 or nt < 2:
        raise ValueError(f"grid needs at least 2 points per axis, got {nr}x{nt}")
    return nr, nt


class RunConfig(BaseModel):
    """One CLI invocation: flags layered over the configuration defaults."""

    command: Literal["coeffs", "pair", "laplace", "envelope", "bargmann-check", "selftest"]
    t: float | None = None
    a: float | None = None
    n_min: int = 1
    n_max: int = 100
    family: str = "chirped"
    method: Literal["recurrence", "quadrature", "contour", "all"] = "recurrence"
    rule_order: int | None = Field(default=None, ge=2, le=2000)
    rule_order_min: int = Field(default=200, ge=2)
    rule_order_per_n: int = Field(default=4, ge=2)
    contour_samples: int = Field(default=256, ge=8)
    grid: tuple[int, int] = (100, 100)
    fock_grid: tuple[int, int] = (200, 256)
    r_max: float = Field(default=12.0, gt=0)
    r_min: float = Field(default=0.1, gt=0)
    fit_stride: int = Field(default=4, ge=1)
    contour_check_n: list[int] = Field(default_factory=lambda: [50, 100, 200, 400])
    legendre_order: int = Field(default=400, ge=2)
    format: Literal["csv", "json"] = "json"
    out: pathlib.Path | None = None
    out_dir: pathlib.Path = pathlib.Path("reports")
    jobs: int = Field(default=0, ge=0)

    @field_validator("grid", "fock_grid", mode="before")
    @classmethod
    def _grid(cls, v):
        return parse_grid(v)

    @field_validator("family")
    @classmethod
    def _family(cls, v: str) -> str:
        if v in ("chirped", "real-gaussian") or re.fullmatch(r"basis:\d+", v):
            return v
        raise ValueError(f"family must be chirped, real-gaussian or basis:K, got {v!r}")

    @model_validator(mode="after")
    def _derive(self) -> "RunConfig":
        if self.t is not None and self.a is not None:
            raise ValueError("give exactly one of --t and --a")
        if self.a is not None:
            if not 0.0 < self.a < 1.0:
                raise ValueError(f"a must lie in (0, 1), got {self.a}")
            self.t = 0.5 * math.atanh(self.a)
        elif self.t is not None:
            if not self.t > 0:
                raise ValueError(f"t must be positive, got {self.t}")
            self.a = math.tanh(2.0 * self.t)
        elif self.command != "selftest":
            raise ValueError("give exactly one of --t and --a")
        if self.n_min < 1:
            raise ValueError(f"n_min must be >= 1, got {self.n_min}")
        if self.n_max < self.n_min:
            raise ValueError(f"n_max ({self.n_max}) is below n_min ({self.n_min})")
        if self.contour_samples & (self.contour_samples - 1):
            raise ValueError(f"contour samples must be a power of two, got {self.contour_samples}")
        return self

    def rule_order_for(self, n_top: int) -> int:
        """The explicit --rule-order, else max(rule_order_min, rule_order_per_n * n_top) capped at 2000."""
        if self.rule_order is not None:
            return self.rule_order
        return min(2000, max(self.rule_order_min, self.rule_order_per_n * n_top))

    @property
    def output_path(self) -> pathlib.Path:
        if self.out is not None:
            return self.out
        return self.out_dir / f"{self.command}.{self.format}"


def build_run_config(args: dict[str, Any], cfg: dict) -> RunConfig:
    """Configuration defaults, then HARDYHERMITE_JOBS, then explicit flags (None means unset)."""
    numerics = cfg.get("numerics") or {}
    envelope = cfg.get("envelope") or {}
    run = cfg.get("run") or {}
    fields: dict[str, Any] = {
        "rule_order_min": numerics.get("rule_order_min"),
        "rule_order_per_n": numerics.get("rule_order_per_n"),
        "contour_samples": numerics.get("contour_samples_min"),
        "legendre_order": numerics.get("legendre_order"),
        "grid": envelope.get("grid"),
        "r_max": envelope.get("r_max"),
        "r_min": envelope.get("r_min"),
        "fit_stride": envelope.get("fit_stride"),
        "contour_check_n": envelope.get("contour_check_n"),
        "fock_grid": (cfg.get("fock") or {}).get("grid"),
        "jobs": run.get("jobs"),
        "format": run.get("format"),
        "out_dir": run.get("out_dir"),
    }
    env_jobs = os.getenv(JOBS_ENV)
    if env_jobs:
        fields["jobs"] = env_jobs
    fields.update({k: v for k, v in args.items() if v is not None})
    return RunConfig(**{k: v for k, v in fields.items() if v is not None})
