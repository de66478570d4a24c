"""
Configuration settings for the affgebra toolkit.
"""

import logging
import os

from dotenv import load_dotenv

load_dotenv()  # Loads environment variables from a .env file if it exists


def _int_setting(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}. Please fix it in your .env file.") from exc
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}.")
    return value


# --- Sampling defaults (overridden by CLI flags) ---
SEED = _int_setting("AFFGEBRA_SEED", 0, 0)
SAMPLES = _int_setting("AFFGEBRA_SAMPLES", 50, 1)
BOUND = _int_setting("AFFGEBRA_BOUND", 10, 1)
WORKERS = _int_setting("AFFGEBRA_WORKERS", 1, 1)

FIELD = os.getenv("AFFGEBRA_FIELD", "q").strip().lower()
if FIELD not in ("q", "qw"):
    raise ValueError(f"AFFGEBRA_FIELD must be 'q' or 'qw', got {FIELD!r}.")

LOG_LEVEL = os.getenv("AFFGEBRA_LOG_LEVEL", "WARNING").strip().upper()
if not isinstance(logging.getLevelName(LOG_LEVEL), int):
    raise ValueError(f"AFFGEBRA_LOG_LEVEL is not a logging level: {LOG_LEVEL!r}.")

# --- Application Constants ---
EXIT_OK = 0
EXIT_DOMAIN_FAILURE = 1
EXIT_USAGE = 2

# Sample scalars for action checks; 0 and 1 pin the unit/zero laws.
DEFAULT_SAMPLE_SCALARS = ("0", "1", "-1", "1/2", "2/3", "-3/2")

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_configured = False


def configure_logging(level: str | None = None) -> None:
    """Install one stream handler on the root logger; later calls only adjust the level."""
    global _configured
    root = logging.getLogger()
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        root.addHandler(handler)
        _configured = True
    root.setLevel((level or LOG_LEVEL).upper())
