"""Baseline dominance and sample-size monotonicity on a generated corpus (no downloads)."""

from statistics import fmean

import pytest

from mcera_miner.core.dataset import SampleDataset
from mcera_miner.core.models import BoundKind
from mcera_miner.core.oracle import BernoulliGenerator
from mcera_miner.runner import RunMode, RunRequest, run_once

SEEDS = range(10)

# Ten dense items: at most 1023 patterns, long transactions for the Massart count.
DENSE = BernoulliGenerator({item: 0.9 for item in range(1, 11)})


@pytest.fixture(scope="module")
def dense_corpus() -> SampleDataset:
    return DENSE.draw(5_000, seed=2024)


@pytest.mark.parametrize("n", [1, 10])
def test_exact_bound_beats_massart_on_generated_corpus(dense_corpus: SampleDataset, n: int) -> None:
    exact = RunRequest(mode=RunMode.EXACT, n=n)
    baseline = RunRequest(mode=RunMode.EXACT, n=n, bound=BoundKind.MASSART)
    for seed in SEEDS:
        mcera_path, _ = run_once(exact, dense_corpus, 2_000, seed)
        massart_path, _ = run_once(baseline, dense_corpus, 2_000, seed)
        assert mcera_path.bound_kind == "thm33"
        assert massart_path.bound_kind == "massart_baseline"
        assert mcera_path.epsilon < massart_path.epsilon


def test_mean_bound_shrinks_with_sample_size_on_generated_corpus(dense_corpus: SampleDataset) -> None:
    request = RunRequest(mode=RunMode.EXACT, n=10)
    means = [fmean(run_once(request, dense_corpus, size, seed)[0].epsilon for seed in SEEDS) for size in (500, 4_000)]
    assert means[1] < means[0]
