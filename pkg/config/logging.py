"""Logging configuration for the library and CLI."""
import logging
import sys
from typing import Optional

PROJECT_LOGGERS = ("main", "graph", "curvature", "clustering", "services", "utils")
QUIET_LOGGERS = ("sklearn", "threadpoolctl")


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """
    Configure logging for command-line runs.

    - project packages log at ``level`` (settings default when omitted)
    - chatty third-party libraries only at WARNING
    - one stdout handler, plus a file handler when ``log_file`` is given

    Args:
        level: Level name such as "INFO" or "DEBUG"
        log_file: Optional path of an extra log file
    """
    from config.settings import settings

    level_name = (level or settings.log_level).upper()
    numeric_level = getattr(logging, level_name, logging.INFO)
    log_file = log_file or settings.log_file

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    for name in PROJECT_LOGGERS:
        logging.getLogger(name).setLevel(numeric_level)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    handlers = [logging.StreamHandler(sys.stdout)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    # Remove existing handlers and add ours
    root_logger.handlers.clear()
    for handler in handlers:
        handler.setLevel(numeric_level)
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)
