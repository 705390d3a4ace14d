"""Logging configuration for the command-line entry point."""

import logging
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "WARNING", log_file: Optional[str] = None) -> logging.Logger:
    """
    Configure the root logger once.

    Console output goes to stderr so --json output on stdout stays clean.

    Args:
        level: DEBUG, INFO, WARNING or ERROR
        log_file: optional file that receives the same records

    Returns:
        The root logger
    """
    numeric = getattr(logging, level.upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level '{level}'")

    logger = logging.getLogger()
    logger.setLevel(numeric)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT)

    # Console handler
    ch = logging.StreamHandler()
    ch.setLevel(numeric)
    ch.setFormatter(formatter)
    logger.addHandler(ch)

    # File handler
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(log_file, encoding='utf-8')
        fh.setLevel(numeric)
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    return logger
