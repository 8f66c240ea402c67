"""
Structured logging setup.
All log output goes to stderr so stdout only carries computed results.
"""

import logging
import sys
from typing import Optional

import structlog

from src.config import get_settings

_configured = False


def _stderr_logger(*args) -> structlog.PrintLogger:
    # Looked up on every logger creation; sys.stderr may be swapped at runtime
    return structlog.PrintLogger(sys.stderr)


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None, force: bool = False) -> None:
    """
    Configure structlog once per process

    Args:
        level: Log level name, defaults to the settings value
        fmt: "json" or "text", defaults to the settings value
        force: Reconfigure even if logging was already set up
    """
    global _configured
    if _configured and not force:
        return

    settings = get_settings()
    level_name = (level or settings.log_level).upper()
    numeric_level = getattr(logging, level_name, None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Unknown log level: {level_name}")

    renderer = (
        structlog.processors.JSONRenderer()
        if (fmt or settings.log_format) == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
    _configured = True
