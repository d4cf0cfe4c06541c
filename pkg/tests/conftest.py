import os
import sys
from collections.abc import Callable
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_ROOT = PROJECT_ROOT / "src"
if str(SRC_ROOT) not in sys.path:
    sys.path.insert(0, str(SRC_ROOT))

from mcera_miner.core.dataset import SampleDataset  # noqa: E402
from mcera_miner.core.rademacher import RademacherMatrix  # noqa: E402

DATASETS_DIR = Path(__file__).resolve().parent / "fixtures" / "datasets"


def _benchmark_path(name: str) -> Path:
    candidates = [DATASETS_DIR / f"{name}.dat"]
    if extra := os.getenv("MCERA_DATASETS_DIR"):
        candidates.append(Path(extra) / f"{name}.dat")
    for candidate in candidates:
        if candidate.exists():
            return candidate
    pytest.skip(f"benchmark corpus '{name}' not available")


@pytest.fixture
def benchmark_dataset() -> Callable[[str], Path]:
    """Resolve a real benchmark corpus by name, skipping the test when it is absent."""
    return _benchmark_path


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    for key in list(os.environ):
        if key.startswith("MCERA_") and key != "MCERA_DATASETS_DIR":
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("MCERA_RESULTS_DIR", str(tmp_path / "results"))


@pytest.fixture
def toy_ds() -> SampleDataset:
    return SampleDataset.from_transactions([[1], [1, 2], [2]], name="toy")


@pytest.fixture
def toy_signs() -> RademacherMatrix:
    return RademacherMatrix.from_signs([[1, -1, 1], [1, 1, 1], [-1, -1, -1]])


@pytest.fixture
def toy_path() -> Path:
    return DATASETS_DIR / "toy.dat"
