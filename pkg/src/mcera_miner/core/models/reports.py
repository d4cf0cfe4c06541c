"""Pydantic models for mining configuration, results and bound reports.

Configs validate their invariants on construction; results and reports are
plain typed containers whose ``model_dump()`` output is what the CLI and the
MCP tools serialize.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class MiningModel(BaseModel):
    """Base model for every mcera-miner payload."""

    model_config = ConfigDict(populate_by_name=True)


class ExplorationOrder(StrEnum):
    SUPPORT_DESC = "support_desc"
    BFS = "bfs"


class BoundKind(StrEnum):
    """Report tags of the deviation bounds; short names are accepted on input."""

    STANDARD = "thm33"
    VARIANCE = "thm34_variance"
    ONE_MCERA = "thm46_1mcera"
    MASSART = "massart_baseline"

    @classmethod
    def _missing_(cls, value: object) -> BoundKind | None:
        if isinstance(value, str):
            return _BOUND_ALIASES.get(value.strip().lower().replace("-", "_"))
        return None


_BOUND_ALIASES: dict[str, BoundKind] = {
    "standard": BoundKind.STANDARD,
    "variance": BoundKind.VARIANCE,
    "one_mcera": BoundKind.ONE_MCERA,
    "massart": BoundKind.MASSART,
}


class DatasetStats(MiningModel):
    """Corpus statistics, including the log of the pattern-count bound sum(2**|s_i|)."""

    m: int
    alphabet_size: int
    avg_transaction_len: float
    log_pattern_count_bound: float


class EngineConfig(MiningModel):
    """Traversal settings for one branch-and-bound run.

    ``restriction`` decides whether a node may update the per-row suprema;
    non-admitted nodes are still traversed. ``beta_floor`` limits the traversal
    itself to nodes with frequency at least ``beta_floor``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    order: ExplorationOrder = ExplorationOrder.SUPPORT_DESC
    include_root_in_sup: bool = False
    restriction: Callable[[Any], bool] | None = None
    max_nodes: int | None = Field(default=None, ge=1)
    beta_floor: float | None = Field(default=None, ge=0.0, le=1.0)
    trace: bool = False
    check_invariants: bool = False

    @model_validator(mode="after")
    def check_cap_order(self) -> EngineConfig:
        if self.max_nodes is not None and self.order is not ExplorationOrder.SUPPORT_DESC:
            raise ValueError("max_nodes requires support_desc order")
        return self


class TraceEntry(MiningModel):
    """One popped node: its statistics over every row plus the rows still live."""

    items: tuple[int, ...]
    support: int
    delta: list[int]
    psi_hat: list[int]
    psi_tilde: int
    live_rows: list[int]
    admitted: bool


class McEraResult(MiningModel):
    nu_raw: list[int]
    n: int
    m: int
    mcera: float
    centralized_mcera: float
    nodes_explored: int
    nodes_pruned: int = 0
    elapsed_seconds: float = 0.0
    empty_family: bool = False
    truncated: bool = False
    beta_effective: float | None = None
    trace: list[TraceEntry] = Field(default_factory=list)


class BoundParams(MiningModel):
    """Range and confidence parameters for a deviation bound.

    ``c`` is the width of the function range. With ``centralize`` set the range
    is shifted to be symmetric around zero, so the effective ``z`` is ``c / 2``.
    """

    a: float = 0.0
    b: float = 1.0
    m: int = Field(..., ge=1)
    n: int = Field(default=1, ge=1)
    eta: float = Field(..., gt=0.0, lt=1.0)
    centralize: bool = True

    @model_validator(mode="after")
    def check_range(self) -> BoundParams:
        if self.c <= 0:
            raise ValueError("function range must have positive width")
        return self

    @property
    def c(self) -> float:
        return abs(self.b - self.a)

    @property
    def z(self) -> float:
        if self.centralize:
            return self.c / 2.0
        return max(abs(self.a), abs(self.b))

    @property
    def log_term(self) -> float:
        return math.log(4.0 / self.eta)


class BoundReport(MiningModel):
    """Every intermediate quantity of one deviation-bound evaluation.

    ``terms`` itemizes ``epsilon``: the values sum to it.
    """

    bound_kind: BoundKind
    mcera_used: float
    r_tilde: float | None = None
    rho: float | None = None
    r: float | None = None
    epsilon: float
    eta: float
    m: int
    n: int
    z: float
    c: float
    concentration_term: float = 0.0
    terms: dict[str, float] = Field(default_factory=dict)
    degenerate: bool = False
    hybrid: bool = False


class HybridReport(BoundReport):
    hybrid: bool = True
    beta_effective: float
    omega_log: float
    gamma: float
    per_row_values: list[float]
    per_row_tail_used: list[bool]
    tail_term: float
    nodes_explored: int


class HybridConfig(MiningModel):
    """Inputs of the hybrid bound: exactly one of ``beta`` or ``max_nodes``.

    ``beta`` must be chosen without looking at the sign matrix.
    """

    beta: float | None = Field(default=None, ge=0.0, le=1.0)
    max_nodes: int | None = Field(default=None, ge=1)
    gamma: float = Field(..., gt=0.0, lt=1.0)
    delta: float = Field(..., gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def check_inputs(self) -> HybridConfig:
        if (self.beta is None) == (self.max_nodes is None):
            raise ValueError("exactly one of beta or max_nodes must be set")
        if self.gamma >= self.delta:
            raise ValueError("gamma must be smaller than delta")
        return self


class TfpConfig(MiningModel):
    theta: float = Field(..., ge=0.0, le=1.0)
    delta: float = Field(..., gt=0.0, lt=1.0)
    n: int = Field(default=1, ge=1)
    seed: int = 0


class PatternFrequency(MiningModel):
    items: tuple[int, ...]
    support: int
    frequency: float


class TfpResult(MiningModel):
    patterns: list[PatternFrequency] = Field(default_factory=list)
    iterations: int
    epsilon_trace: list[float] = Field(default_factory=list)
    final_threshold: float
    nodes_explored: int = 0
    bound_kind: BoundKind = BoundKind.VARIANCE

    @property
    def itemsets(self) -> set[tuple[int, ...]]:
        return {pattern.items for pattern in self.patterns}


class OracleReport(MiningModel):
    """Outcome of a randomized engine-versus-brute-force batch."""

    instances: int
    seed: int
    checks: int = 0
    failures: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


RUN_RECORD_FIELDS: tuple[str, ...] = (
    "dataset",
    "m",
    "n",
    "delta",
    "seed",
    "mode",
    "bound_kind",
    "mcera",
    "epsilon",
    "nodes_explored",
    "elapsed_ms",
    "beta",
    "theta",
    "pattern_count",
)


class RunRecord(MiningModel):
    """One experiment row. Field order is the CSV column order."""

    dataset: str
    m: int
    n: int
    delta: float
    seed: int
    mode: str
    bound_kind: str | None = None
    mcera: float | None = None
    epsilon: float | None = None
    nodes_explored: int | None = None
    elapsed_ms: float | None = None
    beta: float | None = None
    theta: float | None = None
    pattern_count: int | None = None


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
