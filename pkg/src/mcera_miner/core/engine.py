"""Branch-and-bound computation of the exact n-sample Monte-Carlo Rademacher average.

Nodes are popped from a priority queue. For every popped node and every row
``j`` still live for it, the node's discrepancy updates the running supremum
``nu[j]``. A row is dropped for the node when the node's support is already
below ``nu[j]``, and is passed down to the children only while the node's
positive count reaches ``nu[j]``. A child with no row left is never enqueued.
"""

from __future__ import annotations

import heapq
import logging
import math
import time
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import DimensionError, InvariantViolation
from .bounds import centralize_mcera
from .dataset import SampleDataset
from .lattice import Pattern, PatternNode, children, minimals, node_discrepancy_arrays
from .models import EngineConfig, ExplorationOrder, McEraResult, TraceEntry
from .rademacher import RademacherMatrix

logger = logging.getLogger(__name__)

_FREQ_TOL = 1e-9


@dataclass(frozen=True)
class SupportBelow:
    """Admission predicate: only patterns with support strictly below ``limit``."""

    limit: int

    def __call__(self, node: PatternNode) -> bool:
        return node.support < self.limit


@dataclass
class EngineState:
    """Mutable state of one run: suprema, queue and counters.

    Queue entries carry the node's live rows (a boolean mask over the sign
    rows) and, when invariant checks are on, the parent's positive counts.
    """

    nu: np.ndarray
    order: ExplorationOrder
    queue: list[tuple[Any, ...]] = field(default_factory=list)
    nodes_explored: int = 0
    nodes_pruned: int = 0
    counter: int = 0

    def push(self, node: PatternNode, rows: np.ndarray, parent_psi_hat: np.ndarray | None = None) -> None:
        if self.order is ExplorationOrder.SUPPORT_DESC:
            key: tuple[Any, ...] = (-node.support, len(node.items), node.items)
        else:
            key = (len(node.items),)
        heapq.heappush(self.queue, (key, self.counter, node, rows, parent_psi_hat))
        self.counter += 1

    def pop(self) -> tuple[PatternNode, np.ndarray, np.ndarray | None]:
        _, _, node, rows, parent_psi_hat = heapq.heappop(self.queue)
        return node, rows, parent_psi_hat

    def peek_support(self) -> int:
        return self.queue[0][2].support


def min_support_for(beta: float | None, m: int) -> int:
    if beta is None:
        return 0
    return max(0, math.ceil(beta * m - _FREQ_TOL))


def _check_chain(
    node: PatternNode,
    delta: np.ndarray,
    psi_hat: np.ndarray,
    parent_psi_hat: np.ndarray | None,
) -> None:
    if not (np.all(delta <= psi_hat) and np.all(psi_hat <= node.support)):
        raise InvariantViolation(
            "Discrepancy exceeds its bounds",
            details={"items": list(node.items)},
        )
    if parent_psi_hat is not None and np.any(psi_hat > parent_psi_hat):
        raise InvariantViolation(
            "Child positive count exceeds its parent's",
            details={"items": list(node.items)},
        )


def get_n_mcera(
    ds: SampleDataset,
    mat: RademacherMatrix,
    cfg: EngineConfig | None = None,
) -> McEraResult:
    """Per-row suprema of the discrepancy over the admitted patterns, and their average."""

    cfg = cfg or EngineConfig()
    if mat.m != ds.m:
        raise DimensionError(
            "Sign matrix and dataset disagree on the number of transactions",
            details={"matrix_m": mat.m, "dataset_m": ds.m},
        )

    started = time.perf_counter()
    n, m = mat.n, mat.m
    state = EngineState(nu=np.full(n, -m, dtype=np.int64), order=cfg.order)
    min_support = min_support_for(cfg.beta_floor, m)
    track_parents = cfg.check_invariants
    trace: list[TraceEntry] = []
    admitted_any = False
    cap_support: int | None = None
    truncated = False

    for root in minimals(ds):
        state.push(root, np.ones(n, dtype=bool))

    while state.queue:
        if cap_support is not None and state.peek_support() < cap_support:
            truncated = True
            break

        node, rows, parent_psi_hat = state.pop()
        delta, psi_hat, psi_tilde = node_discrepancy_arrays(node, mat)
        if cfg.check_invariants:
            _check_chain(node, delta, psi_hat, parent_psi_hat)

        live = rows & (psi_tilde >= state.nu)
        admitted = bool(node.items or cfg.include_root_in_sup) and (
            cfg.restriction is None or bool(cfg.restriction(node))
        )
        if admitted:
            admitted_any = True
            state.nu = np.where(live, np.maximum(state.nu, delta), state.nu)
        surviving = live & (psi_hat >= state.nu)
        state.nodes_explored += 1

        if cfg.trace:
            trace.append(
                TraceEntry(
                    items=node.items,
                    support=node.support,
                    delta=delta.tolist(),
                    psi_hat=psi_hat.tolist(),
                    psi_tilde=psi_tilde,
                    live_rows=np.flatnonzero(live).tolist(),
                    admitted=admitted,
                )
            )

        if cfg.max_nodes is not None and cap_support is None and state.nodes_explored >= cfg.max_nodes:
            cap_support = node.support

        if not surviving.any():
            continue
        for child in children(node, ds):
            if child.support < min_support:
                continue
            child_rows = surviving & (child.support >= state.nu)
            if not child_rows.any():
                state.nodes_pruned += 1
                continue
            state.push(child, child_rows, psi_hat if track_parents else None)

    elapsed = time.perf_counter() - started
    nu_raw = [int(v) for v in state.nu]
    if truncated:
        logger.warning(
            "Node cap %s reached: traversal stopped below support %s",
            cfg.max_nodes,
            cap_support,
        )
    logger.debug(
        "Explored %s nodes, pruned %s (n=%s, m=%s)",
        state.nodes_explored,
        state.nodes_pruned,
        n,
        m,
    )

    return McEraResult(
        nu_raw=nu_raw,
        n=n,
        m=m,
        mcera=sum(nu_raw) / (n * m),
        centralized_mcera=centralize_mcera(nu_raw, mat.row_sums.tolist(), 1.0, n, m),
        nodes_explored=state.nodes_explored,
        nodes_pruned=state.nodes_pruned,
        elapsed_seconds=elapsed,
        empty_family=not admitted_any,
        truncated=truncated,
        beta_effective=(cap_support / m) if truncated and cap_support is not None else None,
        trace=trace,
    )


def verify_parent_first_order(trace: Iterable[TraceEntry | Pattern]) -> bool:
    """True iff every popped pattern's canonical parent was popped before it."""

    seen: set[Pattern] = set()
    for entry in trace:
        items = tuple(entry.items if isinstance(entry, TraceEntry) else entry)
        if items and items[:-1] not in seen:
            return False
        seen.add(items)
    return True


__all__ = [
    "EngineState",
    "SupportBelow",
    "get_n_mcera",
    "min_support_for",
    "verify_parent_first_order",
]
