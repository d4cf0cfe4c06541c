"""Mining core: datasets, sign matrices, the lattice engine, bounds and miners."""

from .bounds import (
    centralize_mcera,
    massart_baseline,
    massart_supdev_bound,
    mcera_concentration_term,
    supdev_bound,
    supdev_bound_one_mcera,
    supdev_bound_variance,
)
from .dataset import SampleDataset, load_fimi, read_fimi, sample_with_replacement, stats
from .engine import SupportBelow, get_n_mcera, verify_parent_first_order
from .hybrid import hybrid_bound, k_tail_term
from .lattice import PatternNode, children, minimals, node_discrepancy_stats
from .rademacher import RademacherMatrix, draw, pos_count
from .tfp import mine_true_frequent, mine_true_frequent_massart, variance_bound

__all__ = [
    "PatternNode",
    "RademacherMatrix",
    "SampleDataset",
    "SupportBelow",
    "centralize_mcera",
    "children",
    "draw",
    "get_n_mcera",
    "hybrid_bound",
    "k_tail_term",
    "load_fimi",
    "massart_baseline",
    "massart_supdev_bound",
    "mcera_concentration_term",
    "mine_true_frequent",
    "mine_true_frequent_massart",
    "minimals",
    "node_discrepancy_stats",
    "pos_count",
    "read_fimi",
    "sample_with_replacement",
    "stats",
    "supdev_bound",
    "supdev_bound_one_mcera",
    "supdev_bound_variance",
    "variance_bound",
    "verify_parent_first_order",
]
