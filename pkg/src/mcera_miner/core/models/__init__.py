"""Typed models shared by the mining core."""

from .reports import (
    RUN_RECORD_FIELDS,
    BoundKind,
    BoundParams,
    BoundReport,
    DatasetStats,
    EngineConfig,
    ExplorationOrder,
    HybridConfig,
    HybridReport,
    McEraResult,
    MiningModel,
    OracleReport,
    PatternFrequency,
    RunRecord,
    TfpConfig,
    TfpResult,
    TraceEntry,
)

__all__ = [
    "RUN_RECORD_FIELDS",
    "BoundKind",
    "BoundParams",
    "BoundReport",
    "DatasetStats",
    "EngineConfig",
    "ExplorationOrder",
    "HybridConfig",
    "HybridReport",
    "McEraResult",
    "MiningModel",
    "OracleReport",
    "PatternFrequency",
    "RunRecord",
    "TfpConfig",
    "TfpResult",
    "TraceEntry",
]
