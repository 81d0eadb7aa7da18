"""Dual logging system - JSON structured and traditional text logs."""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from nonsmooth_cert import constants

CONTEXT_FIELDS = ("p", "manifold", "strategy", "family", "details")


class JSONFormatter(logging.Formatter):
    """Format log records as JSON."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON string."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for name in CONTEXT_FIELDS:
            if hasattr(record, name):
                log_data[name] = getattr(record, name)

        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        return json.dumps(log_data, default=str)


class TextFormatter(logging.Formatter):
    """Format log records as traditional text."""

    def __init__(self):
        super().__init__(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )


def setup_logging(
    log_level: str = constants.DEFAULT_LOG_LEVEL,
    log_dir: Optional[Path] = None,
    console_format: str = constants.DEFAULT_LOG_FORMAT,
) -> logging.Logger:
    """
    Set up dual logging system.

    Console output goes to stderr so that command output on stdout stays
    byte-for-byte reproducible.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for log files; no files are written when None
        console_format: "text" or "json" for the stderr handler

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger("nonsmooth_cert")
    logger.setLevel(getattr(logging, log_level.upper()))
    logger.handlers.clear()
    logger.propagate = False

    if log_dir is not None:
        log_dir = Path(log_dir)
        structured_dir = log_dir / constants.DIR_LOGS_STRUCTURED
        text_dir = log_dir / constants.DIR_LOGS_TEXT
        structured_dir.mkdir(parents=True, exist_ok=True)
        text_dir.mkdir(parents=True, exist_ok=True)
        stamp = datetime.now().strftime('%Y%m%d')

        json_handler = logging.FileHandler(
            structured_dir / f"{constants.LOG_FILE_PREFIX}-{stamp}.json"
        )
        json_handler.setFormatter(JSONFormatter())
        logger.addHandler(json_handler)

        text_handler = logging.FileHandler(
            text_dir / f"{constants.LOG_FILE_PREFIX}-{stamp}.log"
        )
        text_handler.setFormatter(TextFormatter())
        logger.addHandler(text_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    if console_format == "json":
        console_handler.setFormatter(JSONFormatter())
    else:
        console_handler.setFormatter(TextFormatter())
    logger.addHandler(console_handler)

    return logger


def get_logger(name: str = "nonsmooth_cert") -> logging.Logger:
    """
    Get logger instance.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


def log_with_context(
    logger: logging.Logger,
    level: str,
    message: str,
    p: Optional[int] = None,
    manifold: Optional[str] = None,
    strategy: Optional[str] = None,
    family: Optional[str] = None,
    details: Optional[Dict[str, Any]] = None,
    exc_info: bool = False
) -> None:
    """
    Log message with contextual information.

    Args:
        logger: Logger instance
        level: Log level (debug, info, warning, error, critical)
        message: Log message
        p: Prime under consideration
        manifold: Short manifold label, e.g. "(3,19)"
        strategy: Search strategy
        family: Candidate family label
        details: Additional details dictionary
        exc_info: Include exception information
    """
    extra = {}
    if p is not None:
        extra['p'] = p
    if manifold:
        extra['manifold'] = manifold
    if strategy:
        extra['strategy'] = strategy
    if family:
        extra['family'] = family
    if details:
        extra['details'] = details

    log_func = getattr(logger, level.lower())
    log_func(message, extra=extra, exc_info=exc_info)
