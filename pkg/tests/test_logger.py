# tests/test_logger.py
from __future__ import annotations

import json
import logging

from core.logger import BasicLogger, JsonFormatter


def test_json_formatter_keeps_extra_fields():
    record = logging.LogRecord("pounce.Suite", logging.INFO, __file__, 1, "Suite %s finished", ("cycles",), None)
    record.failures = 0
    data = json.loads(JsonFormatter().format(record))
    assert data["message"] == "Suite cycles finished"
    assert data["level"] == "INFO"
    assert data["failures"] == 0
    assert "pathname" not in data


def test_file_handler_writes_json_lines(tmp_project_root):
    logger = BasicLogger("file-test", log_to_file=True, log_dir=str(tmp_project_root), log_file="t.jsonl").get_logger()
    logger.info("hello", extra={"instance": "k2"})
    for handler in logger.handlers:
        handler.flush()
    line = (tmp_project_root / "t.jsonl").read_text(encoding="utf-8").splitlines()[0]
    assert json.loads(line)["instance"] == "k2"


def test_configure_relevels_existing_loggers(test_logger):
    try:
        BasicLogger.configure(level=logging.WARNING)
        assert test_logger.level == logging.WARNING
        assert BasicLogger("created-later").get_logger().level == logging.WARNING
    finally:
        BasicLogger.configure(level=logging.INFO)
