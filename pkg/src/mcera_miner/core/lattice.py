"""Itemset lattice: pattern nodes with tid-lists and canonical child generation.

A pattern's children are its extensions by one item larger than its current
maximum, so every itemset is generated from exactly one parent (the pattern
with its largest item removed).
"""

from __future__ import annotations

import bisect
import logging
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .dataset import SampleDataset
from .rademacher import RademacherMatrix, pos_count

logger = logging.getLogger(__name__)

Pattern = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class PatternNode:
    """An itemset and the sorted indices of the transactions containing it."""

    items: Pattern
    tidlist: np.ndarray

    @property
    def support(self) -> int:
        return int(self.tidlist.size)


def minimals(ds: SampleDataset) -> list[PatternNode]:
    """The traversal root: the empty pattern, contained in every transaction."""

    return [PatternNode(items=(), tidlist=np.arange(ds.m, dtype=np.int64))]


def children(node: PatternNode, ds: SampleDataset) -> list[PatternNode]:
    """Canonical extensions of ``node``, zero-support children included."""

    start = bisect.bisect_right(ds.alphabet, node.items[-1]) if node.items else 0
    tidlists = ds.item_tidlists
    return [
        PatternNode(
            items=(*node.items, item),
            tidlist=np.intersect1d(node.tidlist, tidlists[item], assume_unique=True),
        )
        for item in ds.alphabet[start:]
    ]


def node_discrepancy_stats(node: PatternNode, mat: RademacherMatrix, j: int) -> tuple[int, int, int]:
    """Row ``j``'s discrepancy of ``node`` and the two bounds dominating its descendants.

    Returns ``(delta, psi_hat, psi_tilde)``: ``2 * pos - support``, ``pos`` and
    ``support``, where ``pos`` counts the ``+1`` signs over the node's tid-list.
    """

    positives = pos_count(mat, j, node.tidlist)
    return 2 * positives - node.support, positives, node.support


def node_discrepancy_arrays(node: PatternNode, mat: RademacherMatrix) -> tuple[np.ndarray, np.ndarray, int]:
    """Vectorized :func:`node_discrepancy_stats` over every row of ``mat``."""

    positives = mat.pos_counts(node.tidlist)
    return 2 * positives - node.support, positives, node.support


def iter_frequent(ds: SampleDataset, min_support: int) -> Iterator[PatternNode]:
    """Depth-first enumeration of non-empty patterns with support >= ``min_support``."""

    stack = [child for child in reversed(children(minimals(ds)[0], ds)) if child.support >= min_support]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(child for child in reversed(children(node, ds)) if child.support >= min_support)


def frequent_patterns(ds: SampleDataset, min_support: int) -> dict[Pattern, int]:
    """Map every non-empty pattern with support >= ``min_support`` to its support."""

    if min_support < 1:
        logger.warning("min_support=%s enumerates zero-support patterns too", min_support)
    result = {node.items: node.support for node in iter_frequent(ds, min_support)}
    logger.debug("Found %s patterns with support >= %s", len(result), min_support)
    return result


__all__ = [
    "Pattern",
    "PatternNode",
    "children",
    "frequent_patterns",
    "iter_frequent",
    "minimals",
    "node_discrepancy_arrays",
    "node_discrepancy_stats",
]
