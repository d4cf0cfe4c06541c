from pathlib import Path
from typing import Any

import pytest
from fastmcp import Client

from mcera_miner.core.models import RUN_RECORD_FIELDS
from mcera_miner.errors import DatasetParseError
from mcera_miner.fastmcp_server import mcp
from mcera_miner.servers.common import format_mining_error


async def _call(tool: str, arguments: dict[str, Any]) -> dict[str, Any]:
    async with Client(mcp) as client:
        result = await client.call_tool(tool, arguments)
    return result.structured_content


@pytest.fixture
def corpus_path(tmp_path: Path) -> Path:
    path = tmp_path / "corpus.dat"
    path.write_text("1 2\n2 3\n1 3\n1 2 3\n2\n3\n" * 20, encoding="utf-8")
    return path


async def test_tools_are_registered() -> None:
    async with Client(mcp) as client:
        names = {tool.name for tool in await client.list_tools()}
    assert names == {"dataset_stats", "supdev_bound", "mine_true_frequent", "oracle_check"}


async def test_dataset_stats(toy_path: Path) -> None:
    payload = await _call("dataset_stats", {"dataset_path": str(toy_path)})
    assert payload["record"]["dataset"] == "toy"
    assert payload["details"]["stats"]["m"] == 3


async def test_exact_bound_and_results_file(corpus_path: Path, tmp_path: Path) -> None:
    payload = await _call(
        "supdev_bound",
        {"dataset_path": str(corpus_path), "n": 3, "seed": 4, "results_file": "runs.csv"},
    )
    assert payload["record"]["bound_kind"] == "thm33"
    assert payload["details"]["bound"]["epsilon"] == payload["record"]["epsilon"]
    assert payload["output"]["rows_written"] == 1

    lines = (tmp_path / "results" / "runs.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(RUN_RECORD_FIELDS)
    assert len(lines) == 2


async def test_hybrid_bound(corpus_path: Path) -> None:
    payload = await _call(
        "supdev_bound",
        {"dataset_path": str(corpus_path), "hybrid": True, "beta": 0.3, "n": 2},
    )
    bound = payload["details"]["bound"]
    assert bound["hybrid"] is True
    assert bound["gamma"] == 0.01
    assert len(bound["per_row_values"]) == 2


async def test_invalid_combination_is_reported(corpus_path: Path) -> None:
    payload = await _call("supdev_bound", {"dataset_path": str(corpus_path), "beta": 0.3})
    assert payload["error"]["code"] == "INVALID_CONFIG"


async def test_missing_dataset_is_reported(tmp_path: Path) -> None:
    payload = await _call("dataset_stats", {"dataset_path": str(tmp_path / "absent.dat")})
    assert payload["error"]["code"] == "IO_ERROR"


async def test_mine_true_frequent(corpus_path: Path) -> None:
    payload = await _call(
        "mine_true_frequent",
        {"dataset_path": str(corpus_path), "theta": 0.2, "n": 2},
    )
    assert payload["record"]["mode"] == "tfp"
    assert payload["record"]["pattern_count"] == len(payload["details"]["tfp"]["patterns"])

    baseline = await _call(
        "mine_true_frequent",
        {"dataset_path": str(corpus_path), "theta": 0.2, "baseline": True},
    )
    assert baseline["details"]["tfp"]["bound_kind"] == "massart_baseline"


async def test_oracle_check() -> None:
    payload = await _call("oracle_check", {"instances": 3, "seed": 1})
    assert payload["passed"] is True
    assert payload["failures"] == []


def test_format_mining_error() -> None:
    payload = format_mining_error(DatasetParseError("bad token", line=3, token="x"))
    assert payload["error"]["code"] == "PARSE_ERROR"
    assert payload["error"]["details"] == {"line": 3, "token": "x"}
    assert format_mining_error(RuntimeError("boom"))["error"]["code"] == "INTERNAL_ERROR"
