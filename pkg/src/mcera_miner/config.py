"""Configuration management for mcera-miner.

Flat application settings loaded from the environment (and an optional ``.env``
file), with explicit overrides taking precedence.
"""

from __future__ import annotations

import contextlib
import os
from typing import Any, Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

_TRUTHY = {"1", "true", "yes", "on"}


class AppConfig(BaseModel):
    """Main application configuration with sensible defaults.

    Environment variables:
        MCERA_RESULTS_DIR: Optional - Directory for accumulated result files (default: ./mcera-results)
        MCERA_OUTPUT_FORMAT: Optional - Record format on stdout, json or csv (default: json)
        MCERA_LOG_LEVEL: Optional - Logging level for stderr diagnostics (default: WARNING)
        MCERA_DEFAULT_DELTA: Optional - Failure probability when --delta is omitted (default: 0.1)
        MCERA_DEFAULT_N: Optional - Monte-Carlo trials when --n is omitted (default: 1)
        MCERA_DEFAULT_GAMMA: Optional - Tail probability share for hybrid runs (default: 0.01)
        MCERA_DEBUG_CHECKS: Optional - Raise on bound-chain violations during traversal (default: off)
        MCERA_RECORD_TIMINGS: Optional - Emit elapsed_ms in records (default: off)
    """

    # Storage
    results_directory: str = Field(default="./mcera-results")

    # Output
    output_format: Literal["json", "csv"] = Field(default="json")
    file_chunk_size: int = Field(default=1000, ge=1)
    record_timings: bool = Field(default=False)

    # Diagnostics
    log_level: str = Field(default="WARNING")
    debug_checks: bool = Field(default=False)

    # Run defaults
    default_delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    default_n: int = Field(default=1, ge=1)
    default_gamma: float = Field(default=0.01, gt=0.0, lt=1.0)

    @field_validator("log_level")
    @classmethod
    def normalise_log_level(cls, value: str) -> str:
        return value.upper()


def _flag(value: str) -> bool:
    return value.strip().lower() in _TRUTHY


def load_config(**overrides: object) -> AppConfig:
    """Load configuration from environment variables with optional overrides."""
    load_dotenv()
    env_config: dict[str, Any] = {}

    if results_dir := os.getenv("MCERA_RESULTS_DIR"):
        env_config["results_directory"] = results_dir
    if output_format := os.getenv("MCERA_OUTPUT_FORMAT"):
        env_config["output_format"] = output_format.lower()
    if log_level := os.getenv("MCERA_LOG_LEVEL"):
        env_config["log_level"] = log_level
    if delta := os.getenv("MCERA_DEFAULT_DELTA"):
        with contextlib.suppress(ValueError):
            env_config["default_delta"] = float(delta)
    if n := os.getenv("MCERA_DEFAULT_N"):
        with contextlib.suppress(ValueError):
            env_config["default_n"] = int(n)
    if gamma := os.getenv("MCERA_DEFAULT_GAMMA"):
        with contextlib.suppress(ValueError):
            env_config["default_gamma"] = float(gamma)
    if debug := os.getenv("MCERA_DEBUG_CHECKS"):
        env_config["debug_checks"] = _flag(debug)
    if timings := os.getenv("MCERA_RECORD_TIMINGS"):
        env_config["record_timings"] = _flag(timings)

    final_config: dict[str, Any] = {**env_config, **overrides}
    return AppConfig(**final_config)


__all__ = ["AppConfig", "load_config"]
