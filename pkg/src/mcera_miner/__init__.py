"""
mcera-miner: exact Monte-Carlo Rademacher averages for itemset families.

Computes the n-sample Monte-Carlo Empirical Rademacher Average of the itemset
family of a transactional sample by branch-and-bound over the itemset lattice,
turns it into probabilistic bounds on the supremum deviation of all itemset
frequencies, and uses those bounds to mine true frequent itemsets with
family-wise error control.

Features:
- Exact n-MCERA with discrepancy-bound pruning (support-ordered or BFS)
- Standard, variance-aware and single-trial deviation bounds, plus a Massart baseline
- Hybrid exploration of only the frequent part of the lattice
- True frequent pattern mining with no false positives w.h.p.
- Brute-force oracles, a CLI for experiment batches, and an MCP tool server
"""

__version__ = "0.1.0"
__license__ = "MIT"

# Package metadata
__all__ = ["__license__", "__version__"]
