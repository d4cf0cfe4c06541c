"""One validated run: sample, draw signs, bound or mine, and summarise as a record.

The CLI and the MCP tools both go through :func:`run_once`, so flag
combinations are validated in a single place (:class:`RunRequest`).
"""

from __future__ import annotations

import logging
import time
from enum import StrEnum
from typing import Any

from pydantic import Field, field_validator, model_validator

from .core.bounds import massart_supdev_bound, supdev_bound, supdev_bound_one_mcera, supdev_bound_variance
from .core.dataset import SampleDataset, sample_with_replacement, stats
from .core.engine import get_n_mcera
from .core.hybrid import hybrid_bound
from .core.models import (
    BoundKind,
    BoundParams,
    BoundReport,
    EngineConfig,
    ExplorationOrder,
    HybridConfig,
    MiningModel,
    RunRecord,
    TfpConfig,
)
from .core.rademacher import draw
from .core.tfp import mine_true_frequent, mine_true_frequent_massart, variance_bound

logger = logging.getLogger(__name__)


class RunMode(StrEnum):
    EXACT = "exact"
    HYBRID = "hybrid"
    TFP = "tfp"
    ORACLE = "oracle"
    STATS = "stats"


_DEFAULT_BOUND = {
    RunMode.EXACT: BoundKind.STANDARD,
    RunMode.HYBRID: BoundKind.STANDARD,
    RunMode.TFP: BoundKind.VARIANCE,
}


class RunRequest(MiningModel):
    """Everything one run needs besides the dataset, sample size and seed."""

    mode: RunMode
    bound: BoundKind | None = None
    n: int = Field(default=1, ge=1)
    delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    theta: float | None = Field(default=None, ge=0.0, le=1.0)
    beta: float | None = Field(default=None, ge=0.0, le=1.0)
    gamma: float | None = Field(default=None, gt=0.0, lt=1.0)
    max_nodes: int | None = Field(default=None, ge=1)
    order: ExplorationOrder = ExplorationOrder.SUPPORT_DESC
    centralize: bool = True
    include_root: bool = False
    timings: bool = False
    debug_checks: bool = False

    @field_validator("bound", mode="before")
    @classmethod
    def accept_bound_alias(cls, value: object) -> object:
        return BoundKind(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def check_combination(self) -> RunRequest:
        hybrid_only = {"beta": self.beta, "gamma": self.gamma, "max_nodes": self.max_nodes}
        if self.mode is not RunMode.HYBRID:
            given = sorted(name for name, value in hybrid_only.items() if value is not None)
            if given:
                raise ValueError(f"{', '.join(given)} only apply to hybrid mode")
        else:
            if (self.beta is None) == (self.max_nodes is None):
                raise ValueError("hybrid mode needs exactly one of beta or max_nodes")
            if self.gamma is None:
                raise ValueError("hybrid mode needs gamma")
            if self.gamma >= self.delta:
                raise ValueError("gamma must be smaller than delta")
            if self.max_nodes is not None and self.order is not ExplorationOrder.SUPPORT_DESC:
                raise ValueError("max_nodes requires support order")

        if self.bound is None and self.mode in _DEFAULT_BOUND:
            self.bound = _DEFAULT_BOUND[self.mode]
        if self.mode is RunMode.HYBRID and self.bound is not BoundKind.STANDARD:
            raise ValueError("hybrid mode only supports the standard bound")
        if self.mode is RunMode.TFP:
            if self.theta is None:
                raise ValueError("tfp mode needs theta")
            if self.bound not in (BoundKind.VARIANCE, BoundKind.MASSART):
                raise ValueError("tfp mode supports the variance or massart bound")
        elif self.theta is not None and not (self.mode is RunMode.EXACT and self.bound is BoundKind.VARIANCE):
            raise ValueError("theta only applies to tfp mode or the variance bound")
        if self.bound is BoundKind.ONE_MCERA and self.n != 1:
            raise ValueError("the one-mcera bound needs n = 1")
        if self.mode in (RunMode.STATS, RunMode.ORACLE) and self.bound is not None:
            raise ValueError(f"{self.mode} mode takes no bound")
        return self


def _max_item_support(ds: SampleDataset) -> int:
    return max((tids.size for tids in ds.item_tidlists.values()), default=0)


def _exact_bound(request: RunRequest, ds: SampleDataset, seed: int) -> tuple[BoundReport, dict[str, Any]]:
    m = ds.m
    if request.bound is BoundKind.MASSART:
        params = BoundParams(m=m, n=request.n, eta=request.delta, centralize=request.centralize)
        report = massart_supdev_bound(stats(ds).log_pattern_count_bound, _max_item_support(ds), params)
        return report, {}

    mat = draw(m, request.n, seed)
    result = get_n_mcera(
        ds,
        mat,
        EngineConfig(
            order=request.order,
            include_root_in_sup=request.include_root,
            check_invariants=request.debug_checks,
        ),
    )
    extra = {
        "nu_raw": result.nu_raw,
        "nodes_explored": result.nodes_explored,
        "nodes_pruned": result.nodes_pruned,
        "empty_family": result.empty_family,
    }
    if request.bound is BoundKind.ONE_MCERA:
        return supdev_bound_one_mcera(result.centralized_mcera, 1.0, m, request.delta), extra

    params = BoundParams(m=m, n=request.n, eta=request.delta, centralize=request.centralize)
    mcera = result.centralized_mcera if request.centralize else result.mcera
    if request.bound is BoundKind.VARIANCE:
        v = variance_bound(request.theta) if request.theta is not None else 0.25
        return supdev_bound_variance(mcera, v, params), extra
    return supdev_bound(mcera, params), extra


def run_once(
    request: RunRequest,
    source: SampleDataset,
    size: int | None,
    seed: int,
) -> tuple[RunRecord, dict[str, Any]]:
    """Execute ``request`` on a sample of ``size`` drawn from ``source`` (or on ``source`` itself)."""

    if request.mode is RunMode.ORACLE:
        raise ValueError("oracle mode does not run on a dataset")
    started = time.perf_counter()
    ds = source if size is None else sample_with_replacement(source, size, seed)
    record: dict[str, Any] = {
        "dataset": source.name,
        "m": ds.m,
        "n": request.n,
        "delta": request.delta,
        "seed": seed,
        "mode": str(request.mode),
        "bound_kind": str(request.bound) if request.bound is not None else None,
        "theta": request.theta,
    }
    details: dict[str, Any]

    if request.mode is RunMode.STATS:
        ds_stats = stats(ds)
        details = {"stats": ds_stats.model_dump()}
    elif request.mode is RunMode.EXACT:
        report, extra = _exact_bound(request, ds, seed)
        record.update(
            mcera=report.mcera_used,
            epsilon=report.epsilon,
            nodes_explored=extra.get("nodes_explored"),
        )
        details = {"bound": report.model_dump(), **extra}
    elif request.mode is RunMode.HYBRID:
        hybrid_cfg = HybridConfig(
            beta=request.beta,
            max_nodes=request.max_nodes,
            gamma=request.gamma,
            delta=request.delta,
        )
        report = hybrid_bound(ds, draw(ds.m, request.n, seed), hybrid_cfg)
        record.update(
            mcera=report.mcera_used,
            epsilon=report.epsilon,
            nodes_explored=report.nodes_explored,
            beta=report.beta_effective,
        )
        details = {"bound": report.model_dump()}
    else:
        assert request.theta is not None
        tfp_cfg = TfpConfig(theta=request.theta, delta=request.delta, n=request.n, seed=seed)
        if request.bound is BoundKind.MASSART:
            result = mine_true_frequent_massart(ds, tfp_cfg)
        else:
            result = mine_true_frequent(ds, tfp_cfg)
        record.update(
            epsilon=result.epsilon_trace[-1] if result.epsilon_trace else None,
            nodes_explored=result.nodes_explored,
            pattern_count=len(result.patterns),
        )
        details = {"tfp": result.model_dump()}

    if request.timings:
        record["elapsed_ms"] = (time.perf_counter() - started) * 1000.0
    logger.debug("Finished %s run on %s (m=%s, seed=%s)", request.mode, source.name, ds.m, seed)
    return RunRecord(**record), details


__all__ = ["RunMode", "RunRequest", "run_once"]
