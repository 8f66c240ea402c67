import json

import pytest

from src.config import CACHE_FORMAT_VERSION
from src.db.cache import CacheManager, cache_io
from src.engines.fusion import FusionEngine
from src.errors import CacheCorruptError, CacheVersionError, PreconditionError


@pytest.fixture
def manager(tmp_path):
    return CacheManager(tmp_path / "memo")


@pytest.fixture
def filled():
    engine = FusionEngine(3, 3)
    engine.fusion_table()
    return engine


def test_store_then_load_round_trip(manager, filled):
    stored = manager.store(filled)
    assert stored == len(filled) >= 100
    assert manager.path_for(3, 3).name == "fusion_r3_k3.json"

    fresh = FusionEngine(3, 3)
    assert manager.load(fresh) == stored
    assert fresh.export_entries() == filled.export_entries()


def test_values_are_decimal_strings(manager, filled):
    manager.store(filled)
    raw = json.loads(manager.path_for(3, 3).read_text())
    assert raw["version"] == CACHE_FORMAT_VERSION
    assert all(isinstance(value, str) for value in raw["entries"].values())


def test_missing_and_empty_files_load_nothing(manager):
    engine = FusionEngine(2, 2)
    assert manager.load(engine) == 0
    path = manager.path_for(2, 2)
    path.parent.mkdir(parents=True)
    path.write_text("")
    assert manager.load(engine) == 0
    assert len(engine) == 0


def test_wrong_version_is_reported(manager):
    path = manager.path_for(2, 2)
    path.parent.mkdir(parents=True)
    path.write_text(json.dumps({"version": CACHE_FORMAT_VERSION + 1, "rank": 2, "level": 2, "entries": {}}))
    with pytest.raises(CacheVersionError) as excinfo:
        manager.load(FusionEngine(2, 2))
    assert excinfo.value.found == CACHE_FORMAT_VERSION + 1
    assert excinfo.value.exit_code == 2


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        json.dumps({"version": CACHE_FORMAT_VERSION, "rank": 2, "level": 2}),
        json.dumps({"version": CACHE_FORMAT_VERSION, "rank": 2, "level": 2, "entries": {"a=0,0|b=1,0|c=1,0": "x"}}),
        json.dumps({"version": CACHE_FORMAT_VERSION, "rank": 2, "level": 2, "entries": {"a=1,0|b=0,0|c=1,0": "1"}}),
        json.dumps({"version": CACHE_FORMAT_VERSION, "rank": 3, "level": 2, "entries": {}}),
    ],
)
def test_corrupt_files_are_reported(manager, payload):
    path = manager.path_for(2, 2)
    path.parent.mkdir(parents=True)
    path.write_text(payload)
    with pytest.raises(CacheCorruptError):
        manager.load(FusionEngine(2, 2))


def test_import_file_and_clear(manager, filled, tmp_path):
    source = tmp_path / "exported.json"
    count = manager.store(filled, source)
    document = manager.import_file(source)
    assert len(document.entries) == count
    assert manager.list_files() == [manager.path_for(3, 3)]

    manager.store(FusionEngine(2, 2))
    assert manager.clear(2, 2) == 1
    assert manager.clear() == 1
    assert manager.list_files() == []


def test_cache_io(tmp_path, filled):
    path = tmp_path / "io.json"
    assert cache_io(filled, path, "store") == len(filled)
    assert cache_io(FusionEngine(3, 3), path, "load") == len(filled)
    with pytest.raises(PreconditionError):
        cache_io(filled, path, "append")
