"""
Structured logging setup
Log lines go to stderr so stdout only carries command output
"""

import logging
import sys

import structlog


def _stderr_logger(*args) -> structlog.PrintLogger:
    # sys.stderr is looked up on every call; run() and CliRunner swap it
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(level: str = "WARNING", json_output: bool = False, colors: bool = True) -> None:
    """Configure structlog for CLI use"""
    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
    ]
    if json_output:
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=colors))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
