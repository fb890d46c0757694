import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from src.utils.settings import get_settings

# Records are pre-rendered JSON documents
LOG_FORMAT = "%(message)s"

_loggers: Dict[str, "StructuredLogger"] = {}


class StructuredLogger:
    """Structured logger for JSON output.

    Writes to stderr so stdout stays free for CLI data, plus an optional
    log file taken from settings.
    """

    def __init__(self, name: str, level: int = logging.INFO, log_file: Optional[str] = None):
        self.name = name
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.logger.propagate = False

        if not self.logger.handlers:
            formatter = logging.Formatter(LOG_FORMAT)

            # Console handler
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

            # File handler
            if log_file:
                file_handler = logging.FileHandler(log_file)
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)

    def set_level(self, level: int) -> None:
        self.logger.setLevel(level)

    def _emit(self, level: str, message: str, **fields: Any) -> None:
        """One JSON document per record; extra fields are merged in."""
        numeric_level = getattr(logging, level)
        if not self.logger.isEnabledFor(numeric_level):
            return

        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "logger": self.name,
            "message": message,
            **fields,
        }
        self.logger.log(numeric_level, json.dumps(log_data, default=str))

    def debug(self, message: str, **fields: Any) -> None:
        self._emit("DEBUG", message, **fields)

    def info(self, message: str, **fields: Any) -> None:
        self._emit("INFO", message, **fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._emit("WARNING", message, **fields)

    def error(self, message: str, **fields: Any) -> None:
        self._emit("ERROR", message, **fields)


def _level_from_name(name: str) -> int:
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.INFO


def get_logger(name: str) -> StructuredLogger:
    """Get a structured logger instance."""
    if name not in _loggers:
        settings = get_settings()
        _loggers[name] = StructuredLogger(
            name, level=_level_from_name(settings.log_level), log_file=settings.log_file
        )
    return _loggers[name]


def set_log_level(name: str) -> None:
    """Apply a level (e.g. from ``--log-level``) to every logger created so far."""
    level = _level_from_name(name)
    for structured in _loggers.values():
        structured.set_level(level)
