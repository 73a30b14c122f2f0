"""Structured JSON logging for gpdlab.

Provides a JSON formatter, setup helper, and the per-instance law event
logger used by the suite runner.
"""

import json
import logging
import sys
from datetime import datetime, timezone


class JSONFormatter(logging.Formatter):
    """Emit log records as single-line JSON."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: dict = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if hasattr(record, "_gpdlab_extra"):
            log_data.update(record._gpdlab_extra)
        return json.dumps(log_data, default=str)


def setup_logging(level: int = logging.INFO) -> None:
    """Configure the ``gpdlab`` logger with JSON output to stderr.

    Idempotent.
    """
    logger = logging.getLogger("gpdlab")
    if any(isinstance(h.formatter, JSONFormatter) for h in logger.handlers):
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JSONFormatter())
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def _log_law_event(
    law: str,
    seed_index: int,
    verdict: str,
    millis: float,
    detail: str | None = None,
) -> None:
    """Log the verdict on one generated law instance."""
    logger = logging.getLogger("gpdlab")
    extra = {
        "_gpdlab_extra": {
            "event": "law",
            "law": law,
            "seed_index": seed_index,
            "verdict": verdict,
            "millis": round(millis, 2),
            "detail": detail,
        }
    }
    level = logging.INFO if verdict == "pass" else logging.WARNING
    logger.log(level, "law_event", extra=extra)
