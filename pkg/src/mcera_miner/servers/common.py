"""Shared utilities for FastMCP tool implementations."""

from __future__ import annotations

import asyncio
import io
from pathlib import Path
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from ..core.dataset import SampleDataset, read_fimi
from ..errors import MiningError
from ..runner import RunRequest, run_once

if TYPE_CHECKING:
    from fastmcp.server.context import Context

    from ..core.models import RunRecord
    from ..utils.output_handler import ResultOutputHandler


def format_mining_error(error: Exception) -> dict[str, Any]:
    """Format a failure as the standard error payload."""
    if isinstance(error, MiningError):
        return error.to_dict()
    if isinstance(error, ValidationError):
        return {
            "error": {
                "code": "INVALID_CONFIG",
                "message": "Invalid run parameters",
                "details": {"errors": [e["msg"] for e in error.errors()]},
            }
        }
    return {
        "error": {
            "code": "IO_ERROR" if isinstance(error, OSError) else "INTERNAL_ERROR",
            "message": str(error),
            "details": {},
        }
    }


def load_dataset(ctx: Context, dataset_path: str) -> SampleDataset:
    """Parse ``dataset_path`` once per session."""
    cache: dict[str, SampleDataset] = ctx.lifespan_context["datasets"]
    key = str(Path(dataset_path).expanduser().resolve())
    if key not in cache:
        cache[key] = read_fimi(key)
    return cache[key]


async def execute(
    ctx: Context,
    request: RunRequest,
    dataset_path: str,
    *,
    sample_size: int | None,
    seed: int,
    results_file: str | None = None,
) -> dict[str, Any]:
    """Run one request off the event loop and shape the tool response."""
    source = load_dataset(ctx, dataset_path)
    record, details = await asyncio.to_thread(run_once, request, source, sample_size, seed)
    response: dict[str, Any] = {"record": record.model_dump(), "details": details}
    if results_file:
        response["output"] = persist_records(ctx, [(record, details)], results_file)
    return response


def persist_records(
    ctx: Context,
    results: list[tuple[RunRecord, dict[str, Any]]],
    results_file: str,
) -> dict[str, Any]:
    handler: ResultOutputHandler = ctx.lifespan_context["output_handler"]
    return handler.handle(results, stream=io.StringIO(), format="csv", results_file=results_file)


__all__ = ["execute", "format_mining_error", "load_dataset", "persist_records"]
