# core/runtime/suite_runner.py
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Optional

from core.config.workbench_config import ConfigError, WorkbenchConfig
from core.logger import BasicLogger
from core.runtime.suites import SUITES, SuiteReport


@dataclass
class UnknownSuiteError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


class SuiteRunner:
    """
    Resolves a verification suite by name and runs it.

    Responsibilities:
    - Check the requested size against the configured caps.
    - Time the run and log a one-line summary plus every failure.
    """

    def __init__(self, config: WorkbenchConfig):
        self.config = config
        self.logger = BasicLogger("SuiteRunner").get_logger()

    def run(self, suite: str, n_max: Optional[int] = None) -> SuiteReport:
        spec = SUITES.get(suite)
        if spec is None:
            raise UnknownSuiteError(f"Unknown suite '{suite}'.", details=sorted(SUITES))

        n = spec.default_n if n_max is None else n_max
        cap = spec.cap(self.config)
        if n < 1 or n > cap:
            raise ConfigError(f"n_max={n} is outside 1..{cap} for suite '{suite}'.", details={"suite": suite, "cap": cap})

        self.logger.info("Suite %s started (n_max=%s)", suite, n)
        started = time.perf_counter()
        report = spec.run(n, self.config)
        elapsed = time.perf_counter() - started

        for instance, reason in report.failures:
            self.logger.error("[FAILED] %s: %s", instance, reason)

        self.logger.info(
            "Suite %s finished: %s instances, %s failures in %.1fs",
            suite,
            report.instances,
            len(report.failures),
            elapsed,
            extra={"suite": suite, "instances": report.instances, "failures": len(report.failures), "seconds": elapsed},
        )
        return report
