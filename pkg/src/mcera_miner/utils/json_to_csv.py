"""Render run records and reports as pinned JSON text or CSV rows.

Floats are printed with 17 significant digits so that output is byte-stable
and lossless.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from enum import Enum
from typing import Any


def format_float(value: float) -> str:
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    text = format(value, ".17g")
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _normalise(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (dict, list, tuple)):
        return render_json(value)
    return str(value)


def render_json(value: Any) -> str:
    """Compact JSON with insertion-ordered keys and 17-digit floats."""

    if hasattr(value, "model_dump"):
        value = value.model_dump()
    if value is None or isinstance(value, bool):
        return json.dumps(value)
    if isinstance(value, Enum):
        return json.dumps(value.value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (int, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, Mapping):
        body = ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {render_json(v)}" for k, v in value.items())
        return "{" + body + "}"
    if isinstance(value, (list, tuple, set, frozenset)):
        return "[" + ", ".join(render_json(v) for v in value) + "]"
    raise TypeError(f"Cannot render {type(value).__name__} as JSON")


class RecordConverter:
    """Convert flat record mappings into CSV text or streamed CSV rows."""

    def to_csv(self, records: Iterable[Mapping[str, object]], fieldnames: Sequence[str] | None = None) -> str:
        buffer = io.StringIO()
        names, row_iter = self.prepare(records, fieldnames)
        if not names:
            return ""
        writer = csv.DictWriter(buffer, fieldnames=names, lineterminator="\n")
        writer.writeheader()
        for row in row_iter:
            writer.writerow(row)
        return buffer.getvalue()

    def prepare(
        self,
        records: Iterable[Mapping[str, object]],
        fieldnames: Sequence[str] | None = None,
    ) -> tuple[list[str], Iterator[dict[str, str]]]:
        """Return the header and normalised rows; pinned ``fieldnames`` win over discovery."""

        raw_records = [self._as_mapping(record) for record in records]
        names = list(fieldnames) if fieldnames else self._collect_fieldnames(raw_records)
        if not names:
            return [], iter(())

        def row_iter() -> Iterator[dict[str, str]]:
            for record in raw_records:
                yield {key: _normalise(record.get(key)) for key in names}

        return names, row_iter()

    def _as_mapping(self, record: Any) -> Mapping[str, object]:
        if hasattr(record, "model_dump"):
            return record.model_dump()
        return record

    def _collect_fieldnames(self, records: list[Mapping[str, object]]) -> list[str]:
        fieldnames: list[str] = []
        seen = set()
        for record in records:
            for key in record:
                if key not in seen:
                    seen.add(key)
                    fieldnames.append(key)
        return fieldnames


__all__ = ["RecordConverter", "format_float", "render_json"]
