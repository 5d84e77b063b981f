import json
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict


class JsonFormatter(logging.Formatter):
    """Format log records as single-line JSON objects."""

    # keys from LogRecord we DON'T want to dump
    _skip_keys = {
        "name", "msg", "args", "levelname", "levelno",
        "pathname", "filename", "module", "exc_info",
        "exc_text", "stack_info", "lineno", "funcName",
        "created", "msecs", "relativeCreated", "thread",
        "threadName", "processName", "process", "asctime",
        "taskName",
    }

    def format(self, record: logging.LogRecord) -> str:
        log_record = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        # include any extra fields passed via logger.*(..., extra={...})
        for key, value in record.__dict__.items():
            if key not in self._skip_keys:
                log_record[key] = value

        return json.dumps(log_record, ensure_ascii=False, default=repr)


class BasicLogger:
    # Process-wide defaults; the CLI overrides them once from the config file.
    _defaults: Dict[str, Any] = {
        "level": logging.INFO,
        "log_to_file": False,
        "log_dir": "logs",
        "log_file": "pounce.jsonl",
    }

    def __init__(
        self,
        name: str,
        level: int | None = None,
        log_to_file: bool | None = None,
        log_dir: str | None = None,
        log_file: str | None = None,
        max_bytes: int = 5_000_000,  # 5 MB
        backup_count: int = 5,
    ):
        self.logger = logging.getLogger(f"pounce.{name}")
        self.logger.setLevel(self._defaults["level"] if level is None else level)
        self.logger.propagate = False

        # Prevent adding handlers multiple times
        if self.logger.handlers:
            return

        # --- Console handler (human-readable, stderr) ---
        console_handler = logging.StreamHandler()
        console_fmt = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        console_handler.setFormatter(console_fmt)
        self.logger.addHandler(console_handler)

        # --- File handler (JSON) ---
        to_file = self._defaults["log_to_file"] if log_to_file is None else log_to_file
        if to_file:
            directory = Path(log_dir or self._defaults["log_dir"])
            directory.mkdir(parents=True, exist_ok=True)
            file_path = directory / (log_file or self._defaults["log_file"])

            file_handler = RotatingFileHandler(
                file_path,
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding="utf-8",
            )
            file_handler.setFormatter(JsonFormatter())
            self.logger.addHandler(file_handler)

    @classmethod
    def configure(
        cls,
        level: int | None = None,
        log_to_file: bool | None = None,
        log_dir: str | None = None,
        log_file: str | None = None,
    ) -> None:
        """Change defaults for loggers created afterwards and re-level existing ones."""
        if level is not None:
            cls._defaults["level"] = level
            for existing in list(logging.Logger.manager.loggerDict.values()):
                if isinstance(existing, logging.Logger) and existing.name.startswith("pounce."):
                    existing.setLevel(level)
        if log_to_file is not None:
            cls._defaults["log_to_file"] = log_to_file
        if log_dir is not None:
            cls._defaults["log_dir"] = log_dir
        if log_file is not None:
            cls._defaults["log_file"] = log_file

    def get_logger(self) -> logging.Logger:
        return self.logger
