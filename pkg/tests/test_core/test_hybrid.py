import math

import pytest
from pydantic import ValidationError

from mcera_miner.core.bounds import supdev_bound
from mcera_miner.core.dataset import SampleDataset, stats
from mcera_miner.core.engine import get_n_mcera
from mcera_miner.core.hybrid import hybrid_bound, k_tail_term
from mcera_miner.core.models import BoundParams, EngineConfig, HybridConfig
from mcera_miner.core.rademacher import RademacherMatrix, draw
from mcera_miner.errors import ConfigError


def test_tail_term_examples() -> None:
    assert k_tail_term(0.0, 10, 5.0, 0.01, 100) == 0.0
    value = k_tail_term(0.1, 10, 20 * math.log(2), 0.01, 10_000)
    assert value == pytest.approx(0.020381, abs=1e-6)
    quadrupled = k_tail_term(0.4, 10, 20 * math.log(2), 0.01, 10_000)
    assert quadrupled == pytest.approx(2 * value)


def test_config_requires_exactly_one_mode() -> None:
    with pytest.raises(ValidationError):
        HybridConfig(gamma=0.01, delta=0.1)
    with pytest.raises(ValidationError):
        HybridConfig(beta=0.1, max_nodes=5, gamma=0.01, delta=0.1)
    with pytest.raises(ValidationError):
        HybridConfig(beta=0.1, gamma=0.2, delta=0.1)


def test_gamma_not_below_delta_is_config_error(toy_ds: SampleDataset, toy_signs: RademacherMatrix) -> None:
    cfg = HybridConfig.model_construct(beta=0.5, max_nodes=None, gamma=0.1, delta=0.1)
    with pytest.raises(ConfigError):
        hybrid_bound(toy_ds, toy_signs, cfg)


def test_toy_hybrid_two_paths(toy_ds: SampleDataset, toy_signs: RademacherMatrix) -> None:
    cfg = HybridConfig(beta=0.5, gamma=0.01, delta=0.1)
    report = hybrid_bound(toy_ds, toy_signs, cfg)

    explored = get_n_mcera(toy_ds, toy_signs, EngineConfig(beta_floor=0.5))
    # {1} and {2} are explored, {1,2} (support 1) is left to the tail
    assert explored.nu_raw == [0, 2, -2]
    tail = k_tail_term(0.5, 3, math.log(2 + 4 + 2), 0.01, 3)
    assert report.tail_term == pytest.approx(tail)
    expected_rows = [max(nu / 3, tail) for nu in explored.nu_raw]
    assert report.per_row_values == pytest.approx(expected_rows)
    assert report.per_row_tail_used == [tail > nu / 3 for nu in explored.nu_raw]

    params = BoundParams(m=3, n=3, eta=0.09, centralize=False)
    direct = supdev_bound(sum(expected_rows) / 3, params)
    assert report.epsilon == pytest.approx(direct.epsilon)
    assert report.hybrid
    assert report.omega_log == pytest.approx(math.log(8))
    assert report.z == 1.0


def test_rows_dominate_exact_values_over_explored_part() -> None:
    ds = SampleDataset.from_transactions([[1, 2, 3], [2, 3], [1, 3], [3], [1, 2], [4], [2, 4]])
    mat = draw(ds.m, 4, seed=13)
    for beta in (0.0, 0.2, 0.4, 0.8):
        report = hybrid_bound(ds, mat, HybridConfig(beta=beta, gamma=0.01, delta=0.1))
        explored = get_n_mcera(ds, mat, EngineConfig(beta_floor=beta))
        for value, nu in zip(report.per_row_values, explored.nu_raw, strict=True):
            assert value >= nu / ds.m
        assert report.nodes_explored <= get_n_mcera(ds, mat).nodes_explored


def test_full_support_floor_is_tail_driven() -> None:
    ds = SampleDataset.from_transactions([[1, 2], [2, 3], [1, 3], [1, 2, 3]])
    mat = draw(ds.m, 2, seed=1)
    report = hybrid_bound(ds, mat, HybridConfig(beta=1.0, gamma=0.01, delta=0.1))
    assert all(report.per_row_tail_used)
    assert report.mcera_used == pytest.approx(report.tail_term)


def test_node_cap_replay_reproduces_report() -> None:
    ds = SampleDataset.from_transactions([[1, 2], [1, 2, 3], [1], [2, 3], [3], [1, 3], [2]])
    mat = draw(ds.m, 3, seed=6)
    capped = hybrid_bound(ds, mat, HybridConfig(max_nodes=3, gamma=0.01, delta=0.1))
    assert capped.beta_effective > 0
    replay = hybrid_bound(ds, mat, HybridConfig(beta=capped.beta_effective, gamma=0.01, delta=0.1))
    assert replay == capped


def test_small_gamma_and_beta_approach_exact_path() -> None:
    ds = SampleDataset.from_transactions([[1, 2], [2, 3], [1, 3], [1, 2, 3], [2], [3], [4]] * 20)
    mat = draw(ds.m, 5, seed=2)
    exact = get_n_mcera(ds, mat)
    exact_eps = supdev_bound(exact.mcera, BoundParams(m=ds.m, n=5, eta=0.1, centralize=False)).epsilon
    hybrid = hybrid_bound(ds, mat, HybridConfig(beta=0.0, gamma=1e-9, delta=0.1))
    assert hybrid.epsilon == pytest.approx(exact_eps, rel=1e-6)


def test_omega_uses_dataset_statistics() -> None:
    ds = SampleDataset.from_transactions([[1, 2, 3], [1]])
    report = hybrid_bound(ds, draw(2, 1, seed=0), HybridConfig(beta=0.5, gamma=0.01, delta=0.1))
    assert report.omega_log == pytest.approx(stats(ds).log_pattern_count_bound)
