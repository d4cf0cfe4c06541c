"""Brute-force references for the branch-and-bound engine and the miners.

Nothing here goes through the engine's traversal: suprema are taken over every
subset of the alphabet, summing signs transaction by transaction.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import OracleLimitError
from ..utils.seeding import seeded_generator
from .dataset import SampleDataset
from .engine import get_n_mcera, verify_parent_first_order
from .lattice import Pattern
from .models import EngineConfig, ExplorationOrder, OracleReport, TfpResult, TraceEntry
from .rademacher import RademacherMatrix, draw

logger = logging.getLogger(__name__)

MAX_ORACLE_ALPHABET = 15
DENSITIES = (0.2, 0.5, 0.8)


def _all_patterns(ds: SampleDataset, include_root: bool) -> Iterator[Pattern]:
    if len(ds.alphabet) > MAX_ORACLE_ALPHABET:
        raise OracleLimitError(
            f"Brute force refuses alphabets above {MAX_ORACLE_ALPHABET} items",
            details={"alphabet_size": len(ds.alphabet)},
        )
    first = 0 if include_root else 1
    for size in range(first, len(ds.alphabet) + 1):
        yield from itertools.combinations(ds.alphabet, size)


def _row_discrepancies(ds: SampleDataset, signs: list[list[int]], items: Pattern) -> list[int]:
    wanted = set(items)
    hits = [i for i, transaction in enumerate(ds.transactions) if wanted.issubset(transaction)]
    return [sum(row[i] for i in hits) for row in signs]


def brute_mcera(ds: SampleDataset, mat: RademacherMatrix, include_root: bool = False) -> list[int]:
    """Exact per-row suprema of the discrepancy by enumerating every pattern."""

    signs = mat.signs().tolist()
    best = [-ds.m] * mat.n
    for items in _all_patterns(ds, include_root):
        for j, value in enumerate(_row_discrepancies(ds, signs, items)):
            if value > best[j]:
                best[j] = value
    return best


def brute_centralized_mcera(
    ds: SampleDataset,
    mat: RademacherMatrix,
    include_root: bool = False,
    c: int = 1,
) -> Fraction:
    """MCERA of the family shifted by ``-c/2``, evaluated on the shifted values directly.

    Sums run over doubled values ``2 * f - c`` so they stay integral.
    """

    signs = mat.signs().tolist()
    best: list[int | None] = [None] * mat.n
    for items in _all_patterns(ds, include_root):
        wanted = set(items)
        doubled = [(2 if wanted.issubset(t) else 0) - c for t in ds.transactions]
        for j, row in enumerate(signs):
            total = sum(s * v for s, v in zip(row, doubled, strict=True))
            current = best[j]
            if current is None or total > current:
                best[j] = total
    # empty family: the engine's -m sentinel, shifted
    totals = [
        value if value is not None else -2 * ds.m - c * sum(row)
        for value, row in zip(best, signs, strict=True)
    ]
    return Fraction(sum(totals), 2 * mat.n * ds.m)


@dataclass(frozen=True)
class BernoulliGenerator:
    """Transactions with every item present independently with its own probability."""

    item_probs: Mapping[int, float]

    def draw(self, m: int, seed: int) -> SampleDataset:
        items = sorted(self.item_probs)
        probs = np.array([self.item_probs[item] for item in items], dtype=np.float64)
        rng = seeded_generator(seed, "bernoulli")
        present = rng.random((m, len(items))) < probs
        rows = [[items[k] for k in np.flatnonzero(mask)] for mask in present]
        return SampleDataset.from_transactions(rows, alphabet=items, name="bernoulli")

    def true_frequency(self, items: Iterable[int]) -> float:
        return math.prod(self.item_probs.get(item, 0.0) for item in items)


@dataclass(frozen=True)
class GroundTruth:
    """True pattern frequencies plus the frequency threshold being mined for."""

    theta: float
    true_frequency: Callable[[Pattern], float]

    @classmethod
    def from_generator(cls, generator: BernoulliGenerator, theta: float) -> GroundTruth:
        return cls(theta=theta, true_frequency=generator.true_frequency)

    @classmethod
    def from_corpus(cls, corpus: SampleDataset, theta: float) -> GroundTruth:
        """Treat the full corpus as the distribution (frequency in the corpus is the truth)."""

        m = corpus.m

        def frequency(items: Pattern) -> float:
            return corpus.support(items) / m if m else 0.0

        return cls(theta=theta, true_frequency=frequency)

    @classmethod
    def from_mapping(cls, frequencies: Mapping[Pattern, float], theta: float) -> GroundTruth:
        return cls(theta=theta, true_frequency=lambda items: frequencies[tuple(items)])


def check_no_false_positives(result: TfpResult, truth: GroundTruth) -> bool:
    return all(truth.true_frequency(pattern.items) >= truth.theta for pattern in result.patterns)


def check_bound_chain(trace: Iterable[TraceEntry]) -> bool:
    """True iff each node's discrepancy is dominated by both bounds, and bounds shrink downward."""

    by_items: dict[Pattern, TraceEntry] = {}
    for entry in trace:
        if any(d > h for d, h in zip(entry.delta, entry.psi_hat, strict=True)):
            return False
        if any(h > entry.psi_tilde for h in entry.psi_hat):
            return False
        parent = by_items.get(entry.items[:-1]) if entry.items else None
        if parent is not None:
            if entry.psi_tilde > parent.psi_tilde:
                return False
            if any(h > ph for h, ph in zip(entry.psi_hat, parent.psi_hat, strict=True)):
                return False
        by_items[entry.items] = entry
    return True


def random_instance(rng: np.random.Generator) -> tuple[SampleDataset, RademacherMatrix]:
    m = int(rng.integers(1, 31))
    k = int(rng.integers(1, 11))
    density = float(rng.choice(DENSITIES))
    n = int(rng.integers(1, 6))
    present = rng.random((m, k)) < density
    ds = SampleDataset.from_transactions(
        ([item for item in range(k) if mask[item]] for mask in present),
        alphabet=range(k),
        name=f"random-m{m}-k{k}",
    )
    return ds, draw(m, n, int(rng.integers(0, 2**31)))


def run_oracle_suite(instances: int = 200, seed: int = 0) -> OracleReport:
    """Compare engine and brute force on ``instances`` random small datasets."""

    rng = seeded_generator(seed, "oracle")
    report = OracleReport(instances=instances, seed=seed)
    for index in range(instances):
        ds, mat = random_instance(rng)
        label = f"instance {index} ({ds.name}, n={mat.n})"
        for include_root in (False, True):
            expected = brute_mcera(ds, mat, include_root)
            shifted = brute_centralized_mcera(ds, mat, include_root)
            scale = 2 * mat.n * mat.m
            for order in ExplorationOrder:
                result = get_n_mcera(
                    ds,
                    mat,
                    EngineConfig(order=order, include_root_in_sup=include_root, trace=True),
                )
                report.checks += 4
                if result.nu_raw != expected:
                    report.failures.append(f"{label}: {order} root={include_root} nu {result.nu_raw} != {expected}")
                if not check_bound_chain(result.trace):
                    report.failures.append(f"{label}: {order} bound chain broken")
                if not verify_parent_first_order(result.trace):
                    report.failures.append(f"{label}: {order} child popped before parent")
                if round(result.centralized_mcera * scale) != shifted * scale:
                    report.failures.append(
                        f"{label}: {order} centralized {result.centralized_mcera} != {float(shifted)}"
                    )
    logger.info(
        "Oracle suite: %s instances, %s checks, %s failures",
        instances,
        report.checks,
        len(report.failures),
    )
    return report


__all__ = [
    "MAX_ORACLE_ALPHABET",
    "BernoulliGenerator",
    "GroundTruth",
    "brute_centralized_mcera",
    "brute_mcera",
    "check_bound_chain",
    "check_no_false_positives",
    "random_instance",
    "run_oracle_suite",
]
