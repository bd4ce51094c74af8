# src/hardyhermite/utils/logging.py
from __future__ import annotations

import json
import logging
import pathlib

_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


class JsonLineFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "time": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload)


def setup_logging(cfg: dict | None = None, debug: bool = False) -> None:
    """Configure the root logger from the `logging` section of the configuration."""
    section = (cfg or {}).get("logging") or {}
    level = logging.DEBUG if debug else getattr(logging, str(section.get("level", "INFO")).upper(), logging.INFO)
    formatter = JsonLineFormatter() if section.get("json") else logging.Formatter(_FORMAT)

    handlers: list[logging.Handler] = [logging.StreamHandler()]
    log_file = section.get("file")
    if log_file:
        path = pathlib.Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding="utf-8"))
    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(level=level, handlers=handlers, force=True)
