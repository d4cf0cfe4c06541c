"""Mining patterns that are frequent in the distribution, not just in the sample.

The reported set excludes, with probability at least ``1 - delta``, every
pattern whose true frequency is below ``theta``. The deviation bound is
recomputed over the patterns not yet reported, with one sign matrix for the
whole run, until no further pattern clears ``theta`` plus the bound.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import EmptySourceError, InvariantViolation
from .bounds import massart_supdev_bound, supdev_bound_variance
from .dataset import SampleDataset, stats
from .engine import SupportBelow, get_n_mcera
from .lattice import Pattern, frequent_patterns
from .models import BoundKind, BoundParams, EngineConfig, PatternFrequency, TfpConfig, TfpResult
from .rademacher import RademacherMatrix, draw

logger = logging.getLogger(__name__)

_FREQ_TOL = 1e-9


def variance_bound(theta: float) -> float:
    """Largest variance of a pattern indicator with frequency below ``theta``."""

    if theta >= 0.5:
        return 0.25
    return theta * (1.0 - theta)


def _support_threshold(frequency: float, m: int) -> int:
    return max(1, math.ceil(frequency * m - _FREQ_TOL))


def _as_result(
    found: dict[Pattern, int],
    m: int,
    *,
    iterations: int,
    epsilon_trace: list[float],
    final_threshold: float,
    nodes_explored: int,
    bound_kind: BoundKind,
) -> TfpResult:
    patterns = [
        PatternFrequency(items=items, support=support, frequency=support / m)
        for items, support in sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ]
    return TfpResult(
        patterns=patterns,
        iterations=iterations,
        epsilon_trace=epsilon_trace,
        final_threshold=final_threshold,
        nodes_explored=nodes_explored,
        bound_kind=bound_kind,
    )


def mine_true_frequent_with(ds: SampleDataset, mat: RademacherMatrix, cfg: TfpConfig) -> TfpResult:
    """Run the iterative miner against an already drawn sign matrix."""

    m = ds.m
    v = variance_bound(cfg.theta)
    signs = mat.packed.copy()
    params = BoundParams(m=m, n=mat.n, eta=cfg.delta, centralize=True)
    limit = m + 1
    found: dict[Pattern, int] = {}
    epsilon_trace: list[float] = []
    nodes_explored = 0
    iterations = 0

    while True:
        result = get_n_mcera(ds, mat, EngineConfig(restriction=SupportBelow(limit)))
        if not np.array_equal(mat.packed, signs):
            raise InvariantViolation(
                "Sign matrix changed between refinement iterations",
                details={"iteration": iterations + 1, "seed": mat.seed},
            )
        iterations += 1
        nodes_explored += result.nodes_explored
        if result.empty_family:
            logger.info("Iteration %s: no pattern left below support %s", iterations, limit)
            break

        epsilon = supdev_bound_variance(result.centralized_mcera, v, params).epsilon
        epsilon_trace.append(epsilon)
        new_limit = _support_threshold(cfg.theta + epsilon, m)
        emitted = {}
        if new_limit < limit:
            emitted = {
                items: support
                for items, support in frequent_patterns(ds, new_limit).items()
                if support < limit
            }
        logger.info(
            "Iteration %s: epsilon=%.6g support threshold=%s emitted=%s",
            iterations,
            epsilon,
            new_limit,
            len(emitted),
        )
        if not emitted:
            break
        found.update(emitted)
        limit = new_limit

    final_threshold = cfg.theta + epsilon_trace[-1] if epsilon_trace else math.inf
    return _as_result(
        found,
        m,
        iterations=iterations,
        epsilon_trace=epsilon_trace,
        final_threshold=final_threshold,
        nodes_explored=nodes_explored,
        bound_kind=BoundKind.VARIANCE,
    )


def mine_true_frequent(ds: SampleDataset, cfg: TfpConfig) -> TfpResult:
    """Draw the sign matrix once from ``cfg.seed`` and run the iterative miner."""

    if ds.m == 0:
        raise EmptySourceError("Cannot mine an empty sample")
    return mine_true_frequent_with(ds, draw(ds.m, cfg.n, cfg.seed), cfg)


def mine_true_frequent_massart(ds: SampleDataset, cfg: TfpConfig) -> TfpResult:
    """One-shot baseline: threshold at ``theta`` plus the Massart-driven bound."""

    if ds.m == 0:
        raise EmptySourceError("Cannot mine an empty sample")
    m = ds.m
    max_support = max((tids.size for tids in ds.item_tidlists.values()), default=0)
    report = massart_supdev_bound(
        stats(ds).log_pattern_count_bound,
        max_support,
        BoundParams(m=m, n=cfg.n, eta=cfg.delta, centralize=True),
    )
    threshold = _support_threshold(cfg.theta + report.epsilon, m)
    found = frequent_patterns(ds, threshold) if threshold <= m else {}
    return _as_result(
        found,
        m,
        iterations=1,
        epsilon_trace=[report.epsilon],
        final_threshold=cfg.theta + report.epsilon,
        nodes_explored=0,
        bound_kind=BoundKind.MASSART,
    )


__all__ = [
    "mine_true_frequent",
    "mine_true_frequent_massart",
    "mine_true_frequent_with",
    "variance_bound",
]
