"""Transactional samples: FIMI ingestion, resampling and corpus statistics."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import IO

import numpy as np

from ..errors import ConfigError, DatasetParseError, EmptySourceError
from ..utils.seeding import SAMPLE_STREAM, seeded_generator
from .models import DatasetStats

logger = logging.getLogger(__name__)

Transaction = tuple[int, ...]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SampleDataset:
    """The bag of ``m`` transactions plus the item alphabet of the pattern language.

    Transactions are deduplicated and sorted. The alphabet normally equals the
    union of the transactions; subsamples keep the alphabet of their source
    corpus so the pattern language does not depend on the random draw.
    """

    transactions: tuple[Transaction, ...]
    alphabet: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_transactions(
        cls,
        rows: Iterable[Iterable[int]],
        *,
        alphabet: Iterable[int] | None = None,
        name: str = "",
    ) -> SampleDataset:
        transactions = tuple(tuple(sorted(set(row))) for row in rows)
        items: set[int] = set()
        for transaction in transactions:
            items.update(transaction)
        if alphabet is not None:
            items.update(alphabet)
        return cls(transactions=transactions, alphabet=tuple(sorted(items)), name=name)

    @property
    def m(self) -> int:
        return len(self.transactions)

    @cached_property
    def item_tidlists(self) -> dict[int, np.ndarray]:
        """Vertical layout: item id -> sorted indices of the transactions holding it."""

        buckets: dict[int, list[int]] = {item: [] for item in self.alphabet}
        for tid, transaction in enumerate(self.transactions):
            for item in transaction:
                buckets[item].append(tid)
        tidlists = {}
        for item, tids in buckets.items():
            array = np.asarray(tids, dtype=np.int64)
            array.setflags(write=False)
            tidlists[item] = array
        return tidlists

    def support(self, items: Iterable[int]) -> int:
        """Number of transactions containing every item of ``items``."""

        wanted = set(items)
        return sum(1 for transaction in self.transactions if wanted.issubset(transaction))


def load_fimi(source: IO[bytes] | IO[str], *, name: str = "") -> SampleDataset:
    """Parse a FIMI stream: one transaction per non-empty line of item ids."""

    rows: list[list[int]] = []
    for line_no, raw in enumerate(source, start=1):
        try:
            line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        except UnicodeDecodeError:
            raise DatasetParseError("line is not valid UTF-8", line=line_no) from None
        tokens = line.split()
        if not tokens:
            continue
        row = []
        for token in tokens:
            try:
                item = int(token)
            except ValueError:
                raise DatasetParseError("item id is not an integer", line=line_no, token=token) from None
            if item < 0:
                raise DatasetParseError("item id is negative", line=line_no, token=token)
            row.append(item)
        rows.append(row)
    dataset = SampleDataset.from_transactions(rows, name=name)
    logger.debug("Loaded %s transactions over %s items", dataset.m, len(dataset.alphabet))
    return dataset


def read_fimi(path: str | Path) -> SampleDataset:
    path = Path(path)
    with path.open("rb") as handle:
        return load_fimi(handle, name=path.stem)


def dump_fimi(ds: SampleDataset, sink: IO[bytes] | None = None) -> bytes:
    """Serialise ``ds`` to FIMI text; writes to ``sink`` when given and returns the bytes."""

    payload = "".join(" ".join(map(str, t)) + "\n" for t in ds.transactions).encode("utf-8")
    if sink is not None:
        sink.write(payload)
    return payload


def sample_with_replacement(ds: SampleDataset, size: int, seed: int) -> SampleDataset:
    """Draw ``size`` transactions uniformly i.i.d. with replacement from ``ds``."""

    if size < 0:
        raise ConfigError("Sample size must be non-negative", details={"requested_size": size})
    if size == 0:
        return SampleDataset(transactions=(), alphabet=ds.alphabet, name=ds.name)
    if ds.m == 0:
        raise EmptySourceError(
            "Cannot sample from an empty dataset",
            details={"requested_size": size},
        )
    rng = seeded_generator(seed, SAMPLE_STREAM)
    picks = rng.integers(0, ds.m, size=size)
    transactions = tuple(ds.transactions[int(i)] for i in picks)
    return SampleDataset(transactions=transactions, alphabet=ds.alphabet, name=ds.name)


def log_sum_pow2(lengths: Iterable[int]) -> float:
    """``ln(sum(2**l))`` evaluated in the log domain; ``-inf`` for no terms."""

    exponents = np.fromiter(lengths, dtype=np.float64) * _LN2
    if exponents.size == 0:
        return -math.inf
    peak = float(exponents.max())
    return peak + math.log(float(np.exp(exponents - peak).sum()))


def stats(ds: SampleDataset) -> DatasetStats:
    lengths = [len(t) for t in ds.transactions]
    return DatasetStats(
        m=ds.m,
        alphabet_size=len(ds.alphabet),
        avg_transaction_len=(sum(lengths) / ds.m) if ds.m else 0.0,
        log_pattern_count_bound=log_sum_pow2(lengths),
    )


__all__ = [
    "SampleDataset",
    "Transaction",
    "dump_fimi",
    "load_fimi",
    "log_sum_pow2",
    "read_fimi",
    "sample_with_replacement",
    "stats",
]
