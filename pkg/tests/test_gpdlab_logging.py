"""Tests for gpdlab structured JSON logging."""

import json
import logging

import pytest

from gpdlab._logging import JSONFormatter, _log_law_event, setup_logging


def _record(msg: str) -> logging.LogRecord:
    return logging.LogRecord(
        name="gpdlab", level=logging.INFO, pathname="", lineno=0, msg=msg, args=(), exc_info=None
    )


@pytest.fixture
def captured():
    """Swap the gpdlab handlers for a list-backed one for the test's duration."""
    logger = logging.getLogger("gpdlab")
    original_handlers = logger.handlers[:]
    original_level = logger.level
    original_propagate = logger.propagate
    records: list[logging.LogRecord] = []

    class _Capture(logging.Handler):
        def emit(self, record: logging.LogRecord) -> None:
            records.append(record)

    logger.handlers = [_Capture()]
    logger.setLevel(logging.INFO)
    logger.propagate = False
    try:
        yield records
    finally:
        logger.handlers = original_handlers
        logger.setLevel(original_level)
        logger.propagate = original_propagate


class TestJSONFormatter:
    """Tests for JSONFormatter."""

    def test_output_is_valid_json(self) -> None:
        data = json.loads(JSONFormatter().format(_record("hello")))
        assert data["message"] == "hello"
        assert data["level"] == "INFO"
        assert data["logger"] == "gpdlab"
        assert data["timestamp"].endswith("+00:00")

    def test_includes_gpdlab_extra(self) -> None:
        record = _record("event")
        record._gpdlab_extra = {"event": "law", "seed_index": 3}
        data = json.loads(JSONFormatter().format(record))
        assert data["event"] == "law"
        assert data["seed_index"] == 3


class TestSetupLogging:
    """Tests for setup_logging()."""

    def test_idempotent(self) -> None:
        logger = logging.getLogger("gpdlab")
        original_handlers = logger.handlers[:]
        original_level = logger.level
        logger.handlers.clear()
        try:
            setup_logging(level=logging.DEBUG)
            count = len(logger.handlers)
            setup_logging()
            assert len(logger.handlers) == count
            assert logger.level == logging.DEBUG
            assert logger.propagate is False
        finally:
            logger.handlers = original_handlers
            logger.setLevel(original_level)
            logger.propagate = True


class TestLogLawEvent:
    """Tests for _log_law_event()."""

    def test_pass_is_info(self, captured: list[logging.LogRecord]) -> None:
        _log_law_event("snake", 2, "pass", 1.236)
        rec = captured[0]
        assert rec.levelno == logging.INFO
        extra = rec._gpdlab_extra
        assert extra["event"] == "law"
        assert extra["law"] == "snake"
        assert extra["seed_index"] == 2
        assert extra["millis"] == 1.24
        assert extra["detail"] is None

    @pytest.mark.parametrize("verdict", ["fail", "budget"])
    def test_other_verdicts_warn(self, captured: list[logging.LogRecord], verdict: str) -> None:
        _log_law_event("snake", 0, verdict, 0.0, "no span equivalence")
        assert captured[0].levelno == logging.WARNING
        assert captured[0]._gpdlab_extra["detail"] == "no span equivalence"

    def test_formats_as_json(self, captured: list[logging.LogRecord]) -> None:
        _log_law_event("terminal", 1, "pass", 0.5)
        data = json.loads(JSONFormatter().format(captured[0]))
        assert data["verdict"] == "pass"
        assert data["message"] == "law_event"
