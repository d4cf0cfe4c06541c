"""Path resolution inside the results directory."""

from __future__ import annotations

import os
import re
from pathlib import Path

from ..errors import MiningError

_INVALID_CHARS = re.compile(r"[^A-Za-z0-9._-]")
_RESERVED_NAMES = {"CON", "PRN", "AUX", "NUL", "COM1", "LPT1"}


class PathSecurityError(MiningError):
    code = "PATH_SECURITY"


class PathResolver:
    def __init__(self, results_dir: str) -> None:
        self._root = Path(results_dir).expanduser().resolve()

    @property
    def root(self) -> Path:
        return self._root

    def resolve(self, filename: str, subdir: str | None = None) -> Path:
        """Sanitised ``filename`` under the results root, creating directories as needed."""

        target_dir = self._root
        if subdir:
            target_dir = target_dir / self._sanitize(subdir)
        target_dir.mkdir(parents=True, exist_ok=True)

        if not os.access(target_dir, os.W_OK):
            raise PathSecurityError(f"No write permission for directory: {target_dir}")

        path = (target_dir / self._sanitize(filename, allow_dot=True)).resolve()
        if not path.is_relative_to(self._root):
            raise PathSecurityError("Resolved path escapes the results directory")
        return path

    def _sanitize(self, value: str, *, allow_dot: bool = False) -> str:
        if not value or value in {".", ".."}:
            raise PathSecurityError("Empty path component")
        candidate = value
        if not allow_dot:
            candidate = candidate.replace(".", "_")
        candidate = _INVALID_CHARS.sub("_", candidate)
        if candidate.upper() in _RESERVED_NAMES:
            candidate = f"_{candidate}"
        return candidate


__all__ = ["PathResolver", "PathSecurityError"]
