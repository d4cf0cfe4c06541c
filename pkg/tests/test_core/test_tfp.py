import math

import pytest
from pydantic import ValidationError

from mcera_miner.core import tfp as tfp_module
from mcera_miner.core.bounds import supdev_bound_variance
from mcera_miner.core.dataset import SampleDataset
from mcera_miner.core.engine import get_n_mcera
from mcera_miner.core.lattice import frequent_patterns
from mcera_miner.core.models import BoundKind, BoundParams, TfpConfig
from mcera_miner.core.oracle import BernoulliGenerator, GroundTruth, check_no_false_positives
from mcera_miner.core.rademacher import draw
from mcera_miner.core.tfp import (
    mine_true_frequent,
    mine_true_frequent_massart,
    mine_true_frequent_with,
    variance_bound,
)
from mcera_miner.errors import EmptySourceError, InvariantViolation

GENERATOR = BernoulliGenerator({1: 0.9, 2: 0.1})


def test_variance_rule() -> None:
    assert variance_bound(0.05) == pytest.approx(0.0475)
    assert variance_bound(0.5) == 0.25
    assert variance_bound(0.7) == 0.25


def test_config_ranges() -> None:
    with pytest.raises(ValidationError):
        TfpConfig(theta=1.5, delta=0.1)
    with pytest.raises(ValidationError):
        TfpConfig(theta=0.5, delta=0.0)


def test_tiny_sample_yields_nothing(toy_ds: SampleDataset) -> None:
    result = mine_true_frequent(toy_ds, TfpConfig(theta=0.5, delta=0.1, n=1, seed=0))
    assert result.patterns == []
    assert result.epsilon_trace[0] > 0.5
    assert result.final_threshold > 1.0


def test_theta_one_yields_nothing() -> None:
    ds = GENERATOR.draw(2_000, seed=1)
    result = mine_true_frequent(ds, TfpConfig(theta=1.0, delta=0.1, n=5, seed=1))
    assert result.patterns == []


def test_empty_sample_is_rejected() -> None:
    with pytest.raises(EmptySourceError):
        mine_true_frequent(SampleDataset.from_transactions([]), TfpConfig(theta=0.5, delta=0.1))


def test_generator_recovers_frequent_item() -> None:
    ds = GENERATOR.draw(10_000, seed=3)
    result = mine_true_frequent(ds, TfpConfig(theta=0.5, delta=0.1, n=10, seed=3))
    assert (1,) in result.itemsets
    assert (2,) not in result.itemsets
    assert check_no_false_positives(result, GroundTruth.from_generator(GENERATOR, 0.5))


def test_epsilon_trace_is_non_increasing_and_threshold_consistent() -> None:
    ds = SampleDataset.from_transactions(
        [[1, 2, 3], [1, 2], [1, 3], [1], [1, 2, 3, 4], [2, 3], [1, 2], [1, 4]] * 150
    )
    result = mine_true_frequent(ds, TfpConfig(theta=0.2, delta=0.1, n=4, seed=5))
    trace = result.epsilon_trace
    assert all(later <= earlier + 1e-12 for earlier, later in zip(trace, trace[1:], strict=False))

    threshold = max(1, math.ceil(result.final_threshold * ds.m - 1e-9))
    assert result.itemsets == set(frequent_patterns(ds, threshold))
    for pattern in result.patterns:
        assert pattern.frequency >= result.final_threshold - 1e-9
        assert pattern.support == ds.support(pattern.items)


def test_first_iteration_uses_whole_family() -> None:
    ds = GENERATOR.draw(3_000, seed=8)
    mat = draw(ds.m, 3, seed=8)
    cfg = TfpConfig(theta=0.5, delta=0.1, n=3, seed=8)
    result = mine_true_frequent_with(ds, mat, cfg)
    unrestricted = get_n_mcera(ds, mat)
    first = supdev_bound_variance(
        unrestricted.centralized_mcera,
        variance_bound(0.5),
        BoundParams(m=ds.m, n=3, eta=0.1),
    )
    assert result.epsilon_trace[0] == pytest.approx(first.epsilon)


def test_every_iteration_reuses_one_sign_matrix(monkeypatch: pytest.MonkeyPatch) -> None:
    seen: list[int] = []

    def recording_engine(ds, mat, config=None):
        seen.append(id(mat))
        return get_n_mcera(ds, mat, config)

    monkeypatch.setattr(tfp_module, "get_n_mcera", recording_engine)
    ds = GENERATOR.draw(10_000, seed=3)
    result = mine_true_frequent(ds, TfpConfig(theta=0.5, delta=0.1, n=4, seed=3))

    assert result.iterations >= 2
    assert len(seen) == result.iterations
    assert len(set(seen)) == 1


def test_sign_changes_between_iterations_are_rejected(monkeypatch: pytest.MonkeyPatch) -> None:
    calls = 0

    def flipping_engine(ds, mat, config=None):
        nonlocal calls
        calls += 1
        result = get_n_mcera(ds, mat, config)
        if calls == 1:
            mat.packed.setflags(write=True)
            mat.packed[0, 0] ^= 0x80
        return result

    monkeypatch.setattr(tfp_module, "get_n_mcera", flipping_engine)
    ds = GENERATOR.draw(2_000, seed=4)
    with pytest.raises(InvariantViolation):
        mine_true_frequent_with(ds, draw(ds.m, 2, seed=4), TfpConfig(theta=0.5, delta=0.1, n=2, seed=4))


def test_massart_baseline_toy_is_empty(toy_ds: SampleDataset) -> None:
    result = mine_true_frequent_massart(toy_ds, TfpConfig(theta=0.5, delta=0.1))
    assert result.patterns == []
    assert result.bound_kind is BoundKind.MASSART
    assert result.iterations == 1


def test_massart_baseline_at_theta_zero() -> None:
    ds = GENERATOR.draw(5_000, seed=2)
    result = mine_true_frequent_massart(ds, TfpConfig(theta=0.0, delta=0.1))
    epsilon = result.epsilon_trace[0]
    expected = {items for items, support in frequent_patterns(ds, 1).items() if support / ds.m >= epsilon}
    assert result.itemsets == expected


@pytest.mark.slow
def test_family_wise_error_batch() -> None:
    truth = GroundTruth.from_generator(GENERATOR, 0.5)
    for seed in range(50):
        ds = GENERATOR.draw(10_000, seed=seed)
        cfg = TfpConfig(theta=0.5, delta=0.1, n=10, seed=seed)
        refined = mine_true_frequent(ds, cfg)
        baseline = mine_true_frequent_massart(ds, cfg)
        assert check_no_false_positives(refined, truth)
        assert baseline.itemsets <= refined.itemsets
        assert (1,) in refined.itemsets
