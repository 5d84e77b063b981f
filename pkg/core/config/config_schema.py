# core/config/config_schema.py
from __future__ import annotations

from typing import Any, Dict

# JSON Schema for the optional workbench config file.
WORKBENCH_CONFIG_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "enumeration_cap": {"type": "integer", "minimum": 1, "maximum": 12},
        "solver": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_vertices": {"type": "integer", "minimum": 1},
                "max_vertices_positional": {"type": "integer", "minimum": 1},
                "max_states": {"type": "integer", "minimum": 1},
            },
        },
        "verify": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "seed": {"type": "integer"},
                "sampled_trees": {"type": "integer", "minimum": 0},
                "random_games": {"type": "integer", "minimum": 0},
                "cycle_horizon": {"type": "integer", "minimum": 1},
                "oracle_depth": {"type": "integer", "minimum": 1, "maximum": 6},
            },
        },
        "log": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "level": {"type": "string", "enum": ["DEBUG", "INFO", "WARNING", "ERROR"]},
                "to_file": {"type": "boolean"},
                "log_dir": {"type": "string"},
                "log_file": {"type": "string"},
            },
        },
        "max_rounds": {"type": "integer", "minimum": 1},
    },
}
