"""The n x m matrix of Rademacher signs, stored as packed bits (+1 <-> 1)."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError, RowIndexError
from ..utils.seeding import SIGN_STREAM, seeded_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RademacherMatrix:
    """Immutable sign matrix with cached per-row sums.

    ``packed[j]`` holds row ``j`` as big-endian bits, one per transaction.
    """

    n: int
    m: int
    seed: int
    packed: np.ndarray
    row_sums: np.ndarray

    @classmethod
    def from_bits(cls, bits: np.ndarray, seed: int = 0) -> RademacherMatrix:
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise DimensionError(
                "Sign matrix needs at least one row and one column",
                details={"shape": list(bits.shape)},
            )
        n, m = bits.shape
        packed = np.packbits(bits, axis=1)
        row_sums = 2 * bits.sum(axis=1, dtype=np.int64) - m
        packed.setflags(write=False)
        row_sums.setflags(write=False)
        return cls(n=int(n), m=int(m), seed=seed, packed=packed, row_sums=row_sums)

    @classmethod
    def from_signs(cls, signs: Sequence[Sequence[int]] | np.ndarray, seed: int = 0) -> RademacherMatrix:
        """Build a matrix from explicit +1/-1 entries (oracle cross-checks, tests)."""

        array = np.asarray(signs, dtype=np.int64)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        if not np.isin(array, (-1, 1)).all():
            raise ValueError("sign entries must be -1 or +1")
        return cls.from_bits((array > 0).astype(np.uint8), seed=seed)

    def signs(self) -> np.ndarray:
        bits = np.unpackbits(self.packed, axis=1, count=self.m).astype(np.int64)
        return 2 * bits - 1

    def pos_counts(self, tids: np.ndarray) -> np.ndarray:
        """Per-row count of +1 signs over ``tids`` (shape ``(n,)``)."""

        tids = np.asarray(tids, dtype=np.int64)
        if tids.size == 0:
            return np.zeros(self.n, dtype=np.int64)
        chunks = self.packed[:, tids >> 3]
        shifts = (7 - (tids & 7)).astype(np.uint8)
        return ((chunks >> shifts) & 1).sum(axis=1, dtype=np.int64)

    def dump_text(self) -> str:
        """Rows of ``+1``/``-1`` tokens, one line per row."""

        return "".join(" ".join(f"{s:+d}" for s in row) + "\n" for row in self.signs())

    def _check_row(self, j: int) -> None:
        if not 0 <= j < self.n:
            raise RowIndexError(
                f"Row {j} outside [0, {self.n})",
                details={"row": j, "n": self.n},
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RademacherMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and self.seed == other.seed
            and np.array_equal(self.packed, other.packed)
        )


def draw(m: int, n: int, seed: int) -> RademacherMatrix:
    """Draw ``n`` rows of ``m`` i.i.d. uniform signs from the seeded sign stream."""

    if m < 1 or n < 1:
        raise DimensionError(
            "Sign matrix dimensions must be positive",
            details={"m": m, "n": n},
        )
    rng = seeded_generator(seed, SIGN_STREAM)
    bits = rng.integers(0, 2, size=(n, m), dtype=np.uint8)
    logger.debug("Drew %sx%s sign matrix (seed=%s)", n, m, seed)
    return RademacherMatrix.from_bits(bits, seed=seed)


def pos_count(mat: RademacherMatrix, j: int, tids: Sequence[int] | np.ndarray) -> int:
    """Number of ``+1`` signs of row ``j`` over the transactions ``tids``."""

    mat._check_row(j)
    tids = np.asarray(tids, dtype=np.int64)
    if tids.size and (tids.min() < 0 or tids.max() >= mat.m):
        raise RowIndexError(
            "Transaction index outside the matrix",
            details={"m": mat.m},
        )
    if tids.size == 0:
        return 0
    chunks = mat.packed[j, tids >> 3]
    return int(((chunks >> (7 - (tids & 7)).astype(np.uint8)) & 1).sum())


__all__ = ["RademacherMatrix", "draw", "pos_count"]
