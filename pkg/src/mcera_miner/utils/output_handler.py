"""Route run records to stdout and to the accumulated results file."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import TYPE_CHECKING, Any, TextIO

from ..core.models import RUN_RECORD_FIELDS, RunRecord
from .json_to_csv import render_json

if TYPE_CHECKING:  # pragma: no cover
    from ..config import AppConfig
    from .file_writer import FileWriter
    from .json_to_csv import RecordConverter
    from .path_resolver import PathResolver

logger = logging.getLogger(__name__)


class ResultOutputHandler:
    def __init__(
        self,
        config: AppConfig,
        csv_converter: RecordConverter,
        path_resolver: PathResolver,
        file_writer: FileWriter,
    ) -> None:
        self._config = config
        self._csv_converter = csv_converter
        self._path_resolver = path_resolver
        self._file_writer = file_writer

    def render(
        self,
        results: Sequence[tuple[RunRecord, dict[str, Any]]],
        *,
        format: str | None = None,
    ) -> str:
        """Stdout text: one JSON line per run (record plus details), or a CSV table."""

        fmt = format or self._config.output_format
        if fmt == "csv":
            return self._csv_converter.to_csv((record for record, _ in results), RUN_RECORD_FIELDS)
        if fmt == "json":
            return "".join(render_json({"record": record, "details": details}) + "\n" for record, details in results)
        raise ValueError(f"Output format '{fmt}' is not supported")

    def handle(
        self,
        results: Sequence[tuple[RunRecord, dict[str, Any]]],
        *,
        stream: TextIO,
        format: str | None = None,
        results_file: str | None = None,
    ) -> dict[str, Any]:
        stream.write(self.render(results, format=format))
        stream.flush()
        summary: dict[str, Any] = {
            "status": "success",
            "output_mode": "screen",
            "records": len(results),
        }
        if results_file:
            resolved = self._path_resolver.resolve(results_file)
            fieldnames, row_iter = self._csv_converter.prepare(
                (record for record, _ in results),
                RUN_RECORD_FIELDS,
            )
            rows_written = self._file_writer.append_csv(
                resolved,
                fieldnames,
                row_iter,
                chunk_size=self._config.file_chunk_size,
            )
            logger.info("Appended %s rows to %s", rows_written, resolved)
            summary.update(
                {
                    "output_mode": "file",
                    "file_path": str(resolved),
                    "rows_written": rows_written,
                }
            )
        return summary


__all__ = ["ResultOutputHandler"]
