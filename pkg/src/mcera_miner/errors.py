"""Domain errors for mcera-miner.

Every error carries a stable ``code`` plus structured ``details`` so the CLI and
the MCP tools can report failures in one payload shape.
"""

from __future__ import annotations

from typing import Any


class MiningError(RuntimeError):
    """Base error raised by the mining core."""

    code = "MINING_ERROR"

    def __init__(
        self,
        message: str,
        *,
        code: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.code = code or type(self).code
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Serialise the error to the standard payload shape."""

        return {
            "error": {
                "code": self.code,
                "message": self.message,
                "details": self.details,
            }
        }


class DatasetParseError(MiningError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, *, line: int, token: str | None = None) -> None:
        details: dict[str, Any] = {"line": line}
        if token is not None:
            details["token"] = token
        super().__init__(f"line {line}: {message}", details=details)
        self.line = line


class EmptySourceError(MiningError):
    code = "EMPTY_SOURCE"


class DimensionError(MiningError):
    code = "DIMENSION_MISMATCH"


class RowIndexError(MiningError, IndexError):
    code = "INDEX_OUT_OF_RANGE"


class ConfigError(MiningError):
    code = "INVALID_CONFIG"


class OracleLimitError(MiningError):
    code = "ORACLE_LIMIT"


class InvariantViolation(MiningError):
    code = "INVARIANT_VIOLATION"


__all__ = [
    "ConfigError",
    "DatasetParseError",
    "DimensionError",
    "EmptySourceError",
    "InvariantViolation",
    "MiningError",
    "OracleLimitError",
    "RowIndexError",
]
