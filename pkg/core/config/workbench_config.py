# core/config/workbench_config.py
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import jsonschema

from core.config.config_schema import WORKBENCH_CONFIG_SCHEMA

CONFIG_ENV_VAR = "POUNCE_CONFIG"


@dataclass
class ConfigError(Exception):
    message: str
    details: Optional[Any] = None

    def __str__(self) -> str:
        if self.details is None:
            return self.message
        return f"{self.message} | details={self.details!r}"


@dataclass(frozen=True)
class SolverLimits:
    # Vertex cap for channels whose states carry the previous exact distance.
    max_vertices: int = 8
    # Vertex cap for position-only channels (BINARY, COARSE).
    max_vertices_positional: int = 10
    max_states: int = 400_000

    @staticmethod
    def from_dict(data: Optional[Dict[str, Any]]) -> "SolverLimits":
        if not data:
            return SolverLimits()
        return SolverLimits(
            max_vertices=int(data.get("max_vertices", 8)),
            max_vertices_positional=int(data.get("max_vertices_positional", 10)),
            max_states=int(data.get("max_states", 400_000)),
        )


@dataclass(frozen=True)
class VerifySettings:
    seed: int = 20240601
    sampled_trees: int = 1000
    random_games: int = 1000
    cycle_horizon: int = 1000
    oracle_depth: int = 4

    @staticmethod
    def from_dict(data: Optional[Dict[str, Any]]) -> "VerifySettings":
        if not data:
            return VerifySettings()
        defaults = VerifySettings()
        return VerifySettings(
            seed=int(data.get("seed", defaults.seed)),
            sampled_trees=int(data.get("sampled_trees", defaults.sampled_trees)),
            random_games=int(data.get("random_games", defaults.random_games)),
            cycle_horizon=int(data.get("cycle_horizon", defaults.cycle_horizon)),
            oracle_depth=int(data.get("oracle_depth", defaults.oracle_depth)),
        )


@dataclass(frozen=True)
class LogSettings:
    level: str = "INFO"
    to_file: bool = False
    log_dir: str = "logs"
    log_file: str = "pounce.jsonl"

    @staticmethod
    def from_dict(data: Optional[Dict[str, Any]]) -> "LogSettings":
        if not data:
            return LogSettings()
        return LogSettings(
            level=str(data.get("level", "INFO")),
            to_file=bool(data.get("to_file", False)),
            log_dir=str(data.get("log_dir", "logs")),
            log_file=str(data.get("log_file", "pounce.jsonl")),
        )


@dataclass(frozen=True)
class WorkbenchConfig:
    enumeration_cap: int = 8
    max_rounds: int = 1000
    solver: SolverLimits = field(default_factory=SolverLimits)
    verify: VerifySettings = field(default_factory=VerifySettings)
    log: LogSettings = field(default_factory=LogSettings)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "WorkbenchConfig":
        if not isinstance(data, dict):
            raise ConfigError("Config root must be a JSON object.")

        try:
            jsonschema.validate(instance=data, schema=WORKBENCH_CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            raise ConfigError("Config failed schema validation.", details=e.message) from e

        return WorkbenchConfig(
            enumeration_cap=int(data.get("enumeration_cap", 8)),
            max_rounds=int(data.get("max_rounds", 1000)),
            solver=SolverLimits.from_dict(data.get("solver")),
            verify=VerifySettings.from_dict(data.get("verify")),
            log=LogSettings.from_dict(data.get("log")),
        )

    @staticmethod
    def from_file(path: str | Path) -> "WorkbenchConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")

        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in config file: {path}", details=str(e)) from e

        return WorkbenchConfig.from_dict(data)

    @staticmethod
    def load(path: str | Path | None = None) -> "WorkbenchConfig":
        """Explicit path first, then $POUNCE_CONFIG, then built-in defaults."""
        chosen = path or os.environ.get(CONFIG_ENV_VAR)
        if not chosen:
            return WorkbenchConfig()
        return WorkbenchConfig.from_file(chosen)
