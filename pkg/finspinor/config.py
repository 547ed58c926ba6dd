import os
import logging

import json5  # supports JSON with comments (JSONC)

logger = logging.getLogger(__name__)

# Read from ENV, fallback to ./config.jsonc next to manage.py
CONFIG_PATH = os.environ.get("CONFIG_PATH", "")

DEFAULTS = {
    "LOG_DIR": "",
    "LOG_LEVEL": "INFO",
    "TIMEZONE": "UTC",
    "TOL_DET": 1e-9,
    "TOL": 1e-10,
    "TOL_KERNEL": 1e-9,
    "ZERO_CUTOFF": 1e-12,
    "METRIC_MAX_N": 5,
    "VERIFY_MAX_N": 5,
    "DEFAULT_SEED": 42,
    "DEFAULT_SAMPLES": 100,
}


def load_config():
    """Load config.jsonc from known locations."""
    for p in [CONFIG_PATH, os.path.join(os.getcwd(), "config.jsonc")]:
        if p and os.path.exists(p):
            try:
                with open(p, "r", encoding="utf-8") as f:
                    data = json5.load(f)
            except ValueError as e:
                logger.warning(f"Ignoring unreadable config {p}: {e}")
                continue
            logger.info(f"Loaded config from: {p}")
            return data
    logger.warning("No config.jsonc found; using defaults.")
    return {}


config = load_config()


# Helper to prioritise environment variables over the config file
def get_setting(env_key: str, json_key: str, default=None):
    return os.environ.get(env_key) or config.get(json_key, default)


def _float(key: str) -> float:
    return float(get_setting(f"FINSPINOR_{key}", key, DEFAULTS[key]))


def _int(key: str) -> int:
    return int(get_setting(f"FINSPINOR_{key}", key, DEFAULTS[key]))


# --------------------------------------------------------------------
# Core settings
# --------------------------------------------------------------------
LOG_DIR         = get_setting("LOG_DIR", "LOG_DIR", DEFAULTS["LOG_DIR"])
LOG_LEVEL       = get_setting("LOG_LEVEL", "LOG_LEVEL", DEFAULTS["LOG_LEVEL"])
TIMEZONE        = get_setting("TIMEZONE", "TIMEZONE", DEFAULTS["TIMEZONE"])

TOL_DET         = _float("TOL_DET")
TOL             = _float("TOL")
TOL_KERNEL      = _float("TOL_KERNEL")
ZERO_CUTOFF     = _float("ZERO_CUTOFF")

METRIC_MAX_N    = _int("METRIC_MAX_N")
VERIFY_MAX_N    = _int("VERIFY_MAX_N")
DEFAULT_SEED    = _int("DEFAULT_SEED")
DEFAULT_SAMPLES = _int("DEFAULT_SAMPLES")
