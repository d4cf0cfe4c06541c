"""Hybrid bound: exact suprema over the frequent patterns, a uniform tail for the rest.

The traversal is limited to patterns with frequency at least ``beta`` (or to
the first ``max_nodes`` nodes in support order, which fixes ``beta`` after the
fact). The discrepancy of the infrequent remainder is covered for every row at
once by a tail term that grows with ``beta`` and with the log of a bound on the
number of patterns in the sample.
"""

from __future__ import annotations

import logging
import math

from ..errors import ConfigError
from .bounds import supdev_bound
from .dataset import SampleDataset, stats
from .engine import get_n_mcera
from .models import BoundParams, EngineConfig, ExplorationOrder, HybridConfig, HybridReport
from .rademacher import RademacherMatrix

logger = logging.getLogger(__name__)


def k_tail_term(beta: float, n: int, log_omega: float, eta: float, m: int) -> float:
    """Bound on every row's 1-MCERA restricted to the patterns below frequency ``beta``."""

    if beta <= 0.0:
        return 0.0
    radicand = 2.0 * beta * (math.log(n) + log_omega + math.log(1.0 / eta)) / m
    return math.sqrt(max(radicand, 0.0))


def hybrid_bound(ds: SampleDataset, mat: RademacherMatrix, cfg: HybridConfig) -> HybridReport:
    if cfg.gamma >= cfg.delta:
        raise ConfigError(
            "gamma must be smaller than delta",
            details={"gamma": cfg.gamma, "delta": cfg.delta},
        )

    result = get_n_mcera(
        ds,
        mat,
        EngineConfig(
            order=ExplorationOrder.SUPPORT_DESC,
            beta_floor=cfg.beta,
            max_nodes=cfg.max_nodes,
        ),
    )
    if cfg.beta is not None:
        beta = cfg.beta
    else:
        beta = result.beta_effective if result.truncated and result.beta_effective is not None else 0.0

    n, m = mat.n, mat.m
    log_omega = stats(ds).log_pattern_count_bound
    tail = k_tail_term(beta, n, log_omega, cfg.gamma, m)
    exact_values = [nu / m for nu in result.nu_raw]
    per_row = [max(value, tail) for value in exact_values]
    tail_used = [tail > value for value in exact_values]
    logger.debug(
        "Hybrid bound: beta=%.6g tail=%.6g rows on tail=%s/%s",
        beta,
        tail,
        sum(tail_used),
        n,
    )

    params = BoundParams(m=m, n=n, eta=cfg.delta - cfg.gamma, centralize=False)
    report = supdev_bound(sum(per_row) / n, params)
    return HybridReport(
        **report.model_dump(exclude={"hybrid"}),
        beta_effective=beta,
        omega_log=log_omega,
        gamma=cfg.gamma,
        per_row_values=per_row,
        per_row_tail_used=tail_used,
        tail_term=tail,
        nodes_explored=result.nodes_explored,
    )


__all__ = ["hybrid_bound", "k_tail_term"]
