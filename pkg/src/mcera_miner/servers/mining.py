"""Mining tools for FastMCP.

Each tool validates its parameters through the same run request as the CLI
and returns the run record plus its details, or an error payload.
"""

from __future__ import annotations

import asyncio
from typing import Any

from fastmcp.server.context import Context
from fastmcp.server.dependencies import CurrentContext
from pydantic import ValidationError

from ..core.models import BoundKind, ExplorationOrder
from ..core.oracle import run_oracle_suite
from ..errors import MiningError
from ..runner import RunMode, RunRequest
from .base import mcp
from .common import execute, format_mining_error

_FAILURES = (MiningError, ValidationError, OSError, ValueError)


@mcp.tool(
    tags={"domain:dataset"},
    annotations={"readOnlyHint": True, "idempotentHint": True},
)
async def dataset_stats(
    dataset_path: str,
    sample_size: int | None = None,
    seed: int = 0,
    ctx: Context = CurrentContext(),
) -> dict[str, Any]:
    """Report transaction count, alphabet size, average length and the pattern-count bound.

    Args:
        dataset_path: Path to a FIMI file
        sample_size: Draw this many transactions with replacement first
        seed: Seed of the sample draw

    Returns:
        Run record and the dataset statistics
    """
    await ctx.debug(f"Computing statistics for {dataset_path}")
    try:
        request = RunRequest(mode=RunMode.STATS)
        return await execute(ctx, request, dataset_path, sample_size=sample_size, seed=seed)
    except _FAILURES as exc:
        return format_mining_error(exc)


@mcp.tool(
    tags={"domain:bounds"},
    annotations={"readOnlyHint": False, "idempotentHint": True},
)
async def supdev_bound(
    dataset_path: str,
    hybrid: bool = False,
    bound: str | None = None,
    n: int | None = None,
    delta: float | None = None,
    sample_size: int | None = None,
    seed: int = 0,
    beta: float | None = None,
    gamma: float | None = None,
    max_nodes: int | None = None,
    order: str = "support_desc",
    centralize: bool = True,
    include_root: bool = False,
    theta: float | None = None,
    results_file: str | None = None,
    ctx: Context = CurrentContext(),
) -> dict[str, Any]:
    """Bound the largest deviation between sample and true itemset frequencies.

    Args:
        dataset_path: Path to a FIMI file
        hybrid: Explore only the frequent part of the lattice and bound the rest
        bound: thm33 (alias standard), variance, one_mcera or massart (exact runs only)
        n: Number of sign rows (default from configuration)
        delta: Failure probability (default from configuration)
        sample_size: Draw this many transactions with replacement first
        seed: Seed of the sample and sign draws
        beta: Frequency floor of the explored part (hybrid)
        gamma: Confidence share of the tail (hybrid, default from configuration)
        max_nodes: Node cap fixing beta after the fact (hybrid)
        order: support_desc or bfs
        centralize: Use the range-centralized family
        include_root: Let the empty itemset enter the supremum
        theta: Frequency threshold selecting the variance proxy (variance bound)
        results_file: Append the record as a CSV row to this results file

    Returns:
        Run record and the full bound report
    """
    config = ctx.lifespan_context["config"]
    mode = RunMode.HYBRID if hybrid else RunMode.EXACT
    await ctx.info(f"Computing {mode} bound for {dataset_path}")
    try:
        request = RunRequest(
            mode=mode,
            bound=BoundKind(bound) if bound else None,
            n=n or config.default_n,
            delta=delta or config.default_delta,
            theta=theta,
            beta=beta,
            gamma=(gamma or config.default_gamma) if hybrid else gamma,
            max_nodes=max_nodes,
            order=ExplorationOrder(order),
            centralize=centralize,
            include_root=include_root,
            timings=config.record_timings,
            debug_checks=config.debug_checks,
        )
        return await execute(
            ctx,
            request,
            dataset_path,
            sample_size=sample_size,
            seed=seed,
            results_file=results_file,
        )
    except _FAILURES as exc:
        return format_mining_error(exc)


@mcp.tool(
    tags={"domain:mining"},
    annotations={"readOnlyHint": False, "idempotentHint": True},
)
async def mine_true_frequent(
    dataset_path: str,
    theta: float,
    delta: float | None = None,
    n: int | None = None,
    sample_size: int | None = None,
    seed: int = 0,
    baseline: bool = False,
    results_file: str | None = None,
    ctx: Context = CurrentContext(),
) -> dict[str, Any]:
    """Mine itemsets whose true frequency is at least theta, with no false positives w.h.p.

    Args:
        dataset_path: Path to a FIMI file
        theta: Frequency threshold in [0, 1]
        delta: Failure probability (default from configuration)
        n: Number of sign rows (default from configuration)
        sample_size: Draw this many transactions with replacement first
        seed: Seed of the sample and sign draws
        baseline: Use the one-shot Massart bound instead of the iterative miner
        results_file: Append the record as a CSV row to this results file

    Returns:
        Run record plus the mined itemsets, iterations and bound trace
    """
    config = ctx.lifespan_context["config"]
    await ctx.info(f"Mining true frequent itemsets of {dataset_path} at theta={theta}")
    try:
        request = RunRequest(
            mode=RunMode.TFP,
            bound=BoundKind.MASSART if baseline else BoundKind.VARIANCE,
            n=n or config.default_n,
            delta=delta or config.default_delta,
            theta=theta,
            timings=config.record_timings,
        )
        return await execute(
            ctx,
            request,
            dataset_path,
            sample_size=sample_size,
            seed=seed,
            results_file=results_file,
        )
    except _FAILURES as exc:
        return format_mining_error(exc)


@mcp.tool(
    tags={"domain:oracle"},
    annotations={"readOnlyHint": True, "idempotentHint": True},
)
async def oracle_check(
    instances: int = 50,
    seed: int = 0,
    ctx: Context = CurrentContext(),
) -> dict[str, Any]:
    """Check the engine against brute force on random small instances.

    Args:
        instances: Number of random datasets
        seed: Seed of the instance generator

    Returns:
        Check count, failures and an overall pass flag
    """
    await ctx.info(f"Running oracle suite on {instances} instances")
    report = await asyncio.to_thread(run_oracle_suite, instances, seed)
    return {**report.model_dump(), "passed": report.passed}
