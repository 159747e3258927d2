import logging
import sys

from app.core.config import LOG_LEVEL


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Route library logs to stderr; stdout is reserved for reports."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
