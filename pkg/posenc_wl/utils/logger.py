"""Logging for the ``posenc_wl`` logger tree.

stdout carries reports and encodings, so every handler writes to stderr or to files
under ``LOG_DIR``. Structured fields go in ``extra={"details": ...}``; the JSON
formatter emits them as a ``details`` key.
"""

import logging
import logging.config
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from posenc_wl.core.config import get_settings

try:
    import pythonjsonlogger  # type: ignore  # noqa: F401

    HAVE_JSON_LOGGER = True
except ImportError:  # pragma: no cover
    HAVE_JSON_LOGGER = False

ROOT_LOGGER = "posenc_wl"
_TEXT_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
_JSON_FIELDS = "%(asctime)s %(levelname)s %(name)s %(funcName)s %(message)s"
_ROTATE_BYTES = 5 * 1024 * 1024


def _formatters(use_json: bool) -> Dict[str, Dict[str, Any]]:
    formatters: Dict[str, Dict[str, Any]] = {
        "text": {"format": _TEXT_FORMAT, "datefmt": "%H:%M:%S"},
    }
    if use_json:
        formatters["json"] = {
            "()": "pythonjsonlogger.jsonlogger.JsonFormatter",
            "fmt": _JSON_FIELDS,
            "rename_fields": {"asctime": "time", "levelname": "level", "name": "logger"},
        }
    return formatters


def _file_handler(path: Path, level: str, formatter: str) -> Dict[str, Any]:
    return {
        "class": "logging.handlers.RotatingFileHandler",
        "level": level,
        "formatter": formatter,
        "filename": str(path),
        "maxBytes": _ROTATE_BYTES,
        "backupCount": 3,
        "encoding": "utf-8",
    }


def build_logging_config(level: str, use_json: bool, log_dir: Optional[Path]) -> Dict[str, Any]:
    """
    Build a ``dictConfig`` mapping.

    Args:
        level: Level for the console handler and the package logger
        use_json: Use the JSON formatter for every handler
        log_dir: When set, add ``posenc_wl.log`` and ``errors.log`` rotating files there
    """
    formatter = "json" if use_json else "text"
    handlers: Dict[str, Dict[str, Any]] = {
        "stderr": {
            "class": "logging.StreamHandler",
            "level": level,
            "formatter": formatter,
            "stream": sys.stderr,
        }
    }
    if log_dir is not None:
        handlers["run_file"] = _file_handler(log_dir / "posenc_wl.log", "DEBUG", formatter)
        handlers["error_file"] = _file_handler(log_dir / "errors.log", "ERROR", formatter)
    names: List[str] = list(handlers)

    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": _formatters(use_json),
        "handlers": handlers,
        "loggers": {ROOT_LOGGER: {"level": level, "handlers": names, "propagate": False}},
        "root": {"level": "WARNING", "handlers": ["stderr"]},
    }


def setup_logging(level: Optional[str] = None) -> None:
    """Configure logging from settings; ``level`` overrides ``LOG_LEVEL`` (the ``--log-level`` flag)."""
    settings = get_settings()
    level = (level or settings.LOG_LEVEL).upper()
    wants_json = settings.LOG_FORMAT.lower() == "json"
    log_dir = settings.log_path
    if log_dir is not None:
        log_dir.mkdir(parents=True, exist_ok=True)

    logging.config.dictConfig(build_logging_config(level, wants_json and HAVE_JSON_LOGGER, log_dir))
    if wants_json and not HAVE_JSON_LOGGER:
        logging.getLogger(ROOT_LOGGER).warning("python-json-logger is not installed; logging as text")

    logging.getLogger("networkx").setLevel(logging.WARNING)
