"""Closed-form supremum-deviation bounds built on a Monte-Carlo Rademacher average.

All logarithms are natural. Every report itemizes ``epsilon`` in ``terms``.
A radicand that goes negative (only for strongly negative averages) is clamped
at zero and the report is flagged ``degenerate``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

from .models import BoundKind, BoundParams, BoundReport

logger = logging.getLogger(__name__)


def _clamped_sqrt(radicand: float, label: str) -> tuple[float, bool]:
    if radicand < 0.0:
        logger.warning("Negative radicand %.6g in %s clamped to 0", radicand, label)
        return 0.0, True
    return math.sqrt(radicand), False


def mcera_concentration_term(z: float, n: int, m: int, eta: float) -> float:
    """Additive slack turning an n-MCERA into an upper bound on the ERA with prob. 1 - eta."""

    if eta >= 1.0:
        return 0.0
    return 2.0 * z * math.sqrt(math.log(1.0 / eta) / (2.0 * n * m))


def supdev_bound(
    mcera: float,
    p: BoundParams,
    *,
    concentration: bool = True,
    kind: BoundKind = BoundKind.STANDARD,
) -> BoundReport:
    """Deviation bound from an MCERA value (or, without ``concentration``, an ERA bound)."""

    c, m, log_term = p.c, p.m, p.log_term
    conc = mcera_concentration_term(p.z, p.n, m, p.eta / 4.0) if concentration else 0.0
    r_tilde = mcera + conc
    root, degenerate = _clamped_sqrt(c * (4.0 * m * r_tilde + c * log_term) * log_term, "supdev_bound")
    terms = {
        "two_r_tilde": 2.0 * r_tilde,
        "variance_term": root / m,
        "log_term": c * log_term / m,
        "deviation_term": c * math.sqrt(log_term / (2.0 * m)),
    }
    return BoundReport(
        bound_kind=kind,
        mcera_used=mcera,
        r_tilde=r_tilde,
        epsilon=math.fsum(terms.values()),
        eta=p.eta,
        m=m,
        n=p.n,
        z=p.z,
        c=c,
        concentration_term=conc,
        terms=terms,
        degenerate=degenerate,
    )


def supdev_bound_variance(mcera: float, v: float, p: BoundParams) -> BoundReport:
    """Variance-aware deviation bound; ``v`` upper-bounds every function's variance."""

    if v < 0:
        raise ValueError("variance bound must be non-negative")
    c, m, log_term = p.c, p.m, p.log_term
    conc = mcera_concentration_term(p.z, p.n, m, p.eta / 4.0)
    rho = mcera + conc
    root, degenerate = _clamped_sqrt(c * (4.0 * m * rho + c * log_term) * log_term, "supdev_bound_variance")
    r = rho + (root + c * log_term) / (2.0 * m)
    spread, spread_degenerate = _clamped_sqrt(2.0 * log_term * (v + 8.0 * c * r) / m, "supdev_bound_variance")
    terms = {
        "two_r": 2.0 * r,
        "variance_term": spread,
        "log_term": 2.0 * c * log_term / (3.0 * m),
    }
    return BoundReport(
        bound_kind=BoundKind.VARIANCE,
        mcera_used=mcera,
        rho=rho,
        r=r,
        epsilon=math.fsum(terms.values()),
        eta=p.eta,
        m=m,
        n=p.n,
        z=p.z,
        c=c,
        concentration_term=conc,
        terms=terms,
        degenerate=degenerate or spread_degenerate,
    )


def supdev_bound_one_mcera(mcera_centralized: float, c: float, m: int, eta: float) -> BoundReport:
    """Sharper bound for a single sign row, from the range-centralized 1-MCERA."""

    if not 0.0 < eta < 1.0:
        raise ValueError("eta must lie in (0, 1)")
    terms = {
        "two_mcera": 2.0 * mcera_centralized,
        "deviation_term": 3.0 * c * math.sqrt(math.log(2.0 / eta) / (2.0 * m)),
    }
    return BoundReport(
        bound_kind=BoundKind.ONE_MCERA,
        mcera_used=mcera_centralized,
        epsilon=math.fsum(terms.values()),
        eta=eta,
        m=m,
        n=1,
        z=c / 2.0,
        c=c,
        terms=terms,
    )


def centralize_mcera(
    nu_raw: Sequence[int],
    row_sums: Sequence[int],
    c: float,
    n: int,
    m: int,
) -> float:
    """MCERA of the family shifted by ``-c/2``, from the unshifted per-row suprema.

    Shifting every function by a constant moves each row's supremum by that
    constant times the row's sign sum, so no second traversal is needed.
    """

    return (sum(nu_raw) - 0.5 * c * sum(row_sums)) / (n * m)


def massart_baseline(log_family_count: float, max_l2_norm: float, m: int) -> float:
    """Deterministic ERA upper bound for a finite family (Massart's finite-class lemma)."""

    if log_family_count <= 0.0:
        return 0.0
    return math.sqrt(2.0 * log_family_count) * max_l2_norm / m


def massart_supdev_bound(log_family_count: float, max_support: int, p: BoundParams) -> BoundReport:
    """Deviation bound driven by :func:`massart_baseline` instead of an MCERA."""

    era = massart_baseline(log_family_count, math.sqrt(max_support), p.m)
    report = supdev_bound(era, p, concentration=False, kind=BoundKind.MASSART)
    if log_family_count <= 0.0:
        report = report.model_copy(update={"degenerate": True})
    return report


__all__ = [
    "centralize_mcera",
    "massart_baseline",
    "massart_supdev_bound",
    "mcera_concentration_term",
    "supdev_bound",
    "supdev_bound_one_mcera",
    "supdev_bound_variance",
]
