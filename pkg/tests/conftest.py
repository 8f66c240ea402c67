import pytest

from src.config import DEFAULT_ENGINE_CONFIG, reset_settings
from src.engines.evaluator import Evaluator
from src.engines.fusion import FusionEngine
from src.weights.partitions import Partition


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point the cache at a temporary directory and re-read settings per test."""
    monkeypatch.setenv("VERLINDE_CACHE_DIR", str(tmp_path / "cache"))
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def evaluator():
    return Evaluator(DEFAULT_ENGINE_CONFIG)


@pytest.fixture
def su2_level2():
    return FusionEngine(2, 2)


def P(*entries):
    return Partition.of(*entries)
