# src/hardyhermite/report_writer.py
from __future__ import annotations

import csv
import json
import logging
import math
import pathlib
from typing import Any, Iterable, Sequence

from pydantic import BaseModel

logger = logging.getLogger(__name__)


def _field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else ""
    return str(value)


def _finite(obj: Any) -> Any:
    """Replace non-finite floats by None throughout a dumped model."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def write_csv(rows: Iterable[dict[str, Any]], columns: Sequence[str], path: str | pathlib.Path) -> pathlib.Path:
    """Header row then one line per row; floats in shortest round-trip form, null as an empty field."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_field(row.get(c)) for c in columns])
    logger.info("Report written to %s", path)
    return path


def write_json(model: BaseModel, path: str | pathlib.Path) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = _finite(model.model_dump(mode="json"))
    path.write_text(json.dumps(payload, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    logger.info("Report written to %s", path)
    return path
