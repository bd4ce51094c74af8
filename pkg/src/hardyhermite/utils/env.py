# src/hardyhermite/utils/env.py
from __future__ import annotations

from pathlib import Path

from dotenv import load_dotenv


def load_env(dotenv_path: str | Path | None = None) -> bool:
    """
    Load HARDYHERMITE_* settings from a .env file.

    Without an explicit path, ./.env is used when it exists. Variables already
    set in the environment win. Returns whether a file was read.
    """
    path = Path(dotenv_path) if dotenv_path else Path(".") / ".env"
    if not path.exists():
        return False
    return load_dotenv(dotenv_path=path, override=False)
