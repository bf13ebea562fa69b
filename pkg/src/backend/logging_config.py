"""Logging for zeroone-lab runs.

Records go to stderr so that CSV and graph dumps on stdout stay clean. Every
record carries a run tag (command and seed) and the process name, since
estimation may fan out over worker processes. The optional file handler is
rotated and keeps the full location of each record.
"""

from __future__ import annotations

import logging
import os
import sys
from logging.config import dictConfig
from pathlib import Path

PACKAGE_PREFIX = "src.backend."
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
FILE_FORMAT = (
    "%(asctime)s | %(levelname)s | %(run)s | %(processName)s | "
    "%(name)s:%(lineno)d | %(message)s"
)

# third-party loggers that are chatty at DEBUG
QUIET_LOGGERS = ("hypothesis",)

_run_tag = "-"


def set_run_context(command: str, seed: int | None = None) -> str:
    """Tag subsequent records with the running command and its seed."""
    global _run_tag
    _run_tag = command if seed is None else f"{command}#{seed}"
    return _run_tag


class RunContextFilter(logging.Filter):
    """Adds ``record.run`` from the current run context."""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run"):
            record.run = _run_tag
        return True


def short_name(name: str) -> str:
    """``src.backend.constructor.steps`` -> ``constructor.steps``."""
    return name[len(PACKAGE_PREFIX) :] if name.startswith(PACKAGE_PREFIX) else name


class ColorFormatter(logging.Formatter):
    """One colored line per record; source location only below INFO."""

    RESET = "\x1b[0m"
    DIM = "\x1b[38;5;245m"
    NAME_COLOR = "\x1b[38;5;141m"
    RUN_COLOR = "\x1b[38;5;108m"

    LEVEL_COLORS = {
        "DEBUG": "\x1b[38;5;245m",
        "INFO": "\x1b[38;5;39m",
        "WARNING": "\x1b[38;5;220m",
        "ERROR": "\x1b[38;5;196m",
        "CRITICAL": "\x1b[48;5;196m\x1b[38;5;15m",
    }

    def __init__(self, color: bool = True, datefmt: str | None = None, **kwargs):
        super().__init__(datefmt=datefmt or "%H:%M:%S")
        self.color = color

    def _paint(self, code: str, text: str) -> str:
        return f"{code}{text}{self.RESET}" if self.color else text

    def format(self, record: logging.LogRecord) -> str:
        level = record.levelname
        where = short_name(record.name)
        if record.levelno < logging.INFO:
            where = f"{where}:{record.lineno}"
        parts = [
            self._paint(self.DIM, self.formatTime(record, self.datefmt)),
            self._paint(self.LEVEL_COLORS.get(level, ""), f"{level:<7}"),
            self._paint(self.RUN_COLOR, getattr(record, "run", _run_tag)),
            self._paint(self.NAME_COLOR, where),
            record.getMessage(),
        ]
        line = " ".join(parts)
        if record.exc_info:
            trace = self.formatException(record.exc_info)
            line = f"{line}\n{self._paint(self.DIM, trace)}"
        return line


def parse_level(level: str | None, default: int) -> int:
    """Map a level name such as ``"debug"`` to its numeric value."""
    if not level:
        return default
    value = logging.getLevelName(level.strip().upper())
    return value if isinstance(value, int) else default


def configure_logging(
    console_level: str = "INFO",
    file_level: str = "DEBUG",
    log_file: str | None = None,
    log_file_max_bytes: int = 10 * 1024 * 1024,
    log_file_backup_count: int = 5,
    color: bool | None = None,
) -> None:
    """Configure root logging for one run.

    Args:
        console_level: stderr handler level (DEBUG, INFO, WARNING, ERROR)
        file_level: file handler level
        log_file: path of the rotated log file, None disables file output
        log_file_max_bytes: rotation size
        log_file_backup_count: number of rotated files kept
        color: force ANSI colors on or off; by default only on a terminal
            and when NO_COLOR is unset
    """
    if color is None:
        color = not os.getenv("NO_COLOR") and _stderr_is_tty()

    handlers: dict[str, dict] = {
        "console": {
            "class": "logging.StreamHandler",
            "level": parse_level(console_level, logging.INFO),
            "formatter": "console",
            "filters": ["run"],
            "stream": "ext://sys.stderr",
        }
    }
    if log_file:
        log_path = Path(log_file).expanduser()
        if not log_path.is_absolute():
            log_path = Path.cwd() / log_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": parse_level(file_level, logging.DEBUG),
            "formatter": "file",
            "filters": ["run"],
            "filename": str(log_path),
            "maxBytes": log_file_max_bytes,
            "backupCount": log_file_backup_count,
            "encoding": "utf-8",
        }

    dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "filters": {"run": {"()": RunContextFilter}},
            "formatters": {
                "console": {"()": ColorFormatter, "color": color},
                "file": {"format": FILE_FORMAT, "datefmt": LOG_DATE_FORMAT},
            },
            "handlers": handlers,
            "root": {"level": logging.DEBUG, "handlers": list(handlers)},
            "loggers": {
                name: {"level": logging.WARNING} for name in QUIET_LOGGERS
            },
        }
    )


def _stderr_is_tty() -> bool:
    return hasattr(sys.stderr, "isatty") and sys.stderr.isatty()
