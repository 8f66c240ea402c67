"""
Persistent fusion memo files.

One JSON document per (rank, level):

    {"version": 1, "rank": 2, "level": 2,
     "entries": {"a=1,0|b=1,0|c=2,0": "1", ...}}

Values are decimal strings so that unbounded integers survive any JSON
consumer. Documents are schema-checked before use; a malformed document
and a document of another format version are reported distinctly.
"""

import json
import os
import threading
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema
import structlog
from pydantic import BaseModel, Field

from src.config import CACHE_FORMAT_VERSION, get_settings
from src.engines.fusion import FusionEngine, FusionKey
from src.errors import CacheCorruptError, CacheVersionError, InvalidWeightError, PreconditionError

logger = structlog.get_logger(__name__)


CACHE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["version", "rank", "level", "entries"],
    "properties": {
        "version": {"type": "integer"},
        "rank": {"type": "integer", "minimum": 1},
        "level": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "object",
            "propertyNames": {"pattern": r"^a=[0-9,]+\|b=[0-9,]+\|c=[0-9,]+$"},
            "additionalProperties": {"type": "string", "pattern": r"^[0-9]+$"},
        },
    },
    "additionalProperties": False,
}


class CacheDocument(BaseModel):
    """Parsed memo file"""

    version: int = CACHE_FORMAT_VERSION
    rank: int = Field(ge=1)
    level: int = Field(ge=1)
    entries: Dict[str, str] = {}

    def values(self) -> Dict[FusionKey, int]:
        """Entries as typed keys and integers; raises CacheCorruptError on bad keys."""
        parsed = {}
        for text, value in self.entries.items():
            try:
                key = FusionKey.parse(text, self.rank, self.level)
            except (InvalidWeightError, PreconditionError) as e:
                raise CacheCorruptError(f"Bad fusion key {text!r}: {e}") from e
            parsed[key] = int(value)
        return parsed


class CacheManager:
    """
    Locations, load, store and clear of fusion memo files
    """

    def __init__(self, cache_dir: Optional[Path] = None):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else get_settings().cache_dir
        self._lock = threading.Lock()

    def path_for(self, rank: int, level: int) -> Path:
        return self.cache_dir / f"fusion_r{rank}_k{level}.json"

    def list_files(self) -> List[Path]:
        if not self.cache_dir.exists():
            return []
        return sorted(self.cache_dir.glob("fusion_r*_k*.json"))

    def read(self, path: Path) -> Optional[CacheDocument]:
        """
        Read and validate one memo file

        Returns:
            The document, or None for an empty file

        Raises:
            CacheCorruptError: unreadable JSON or schema failure
            CacheVersionError: a document of another format version
        """
        path = Path(path)
        with self._lock:
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as e:
                raise CacheCorruptError(f"Cannot read memo file {path}: {e}") from e
        if not text.strip():
            return None
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise CacheCorruptError(f"Memo file {path} is not valid JSON: {e}") from e

        if isinstance(raw, dict) and "version" in raw and raw["version"] != CACHE_FORMAT_VERSION:
            raise CacheVersionError(
                f"Memo file {path} has version {raw['version']!r}, expected {CACHE_FORMAT_VERSION}",
                found=raw["version"],
                expected=CACHE_FORMAT_VERSION,
            )
        try:
            jsonschema.validate(raw, CACHE_SCHEMA)
        except jsonschema.ValidationError as e:
            raise CacheCorruptError(f"Memo file {path} fails its schema: {e.message}") from e
        return CacheDocument(**raw)

    def write(self, path: Path, document: CacheDocument) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(document.model_dump(), indent=2, sort_keys=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with self._lock:
            tmp.write_text(payload + "\n", encoding="utf-8")
            os.replace(tmp, path)

    def load(self, engine: FusionEngine, path: Optional[Path] = None) -> int:
        """Merge a memo file into the engine; a missing or empty file loads nothing."""
        path = Path(path) if path is not None else self.path_for(engine.rank, engine.level)
        if not path.exists():
            logger.info("No memo file", path=str(path))
            return 0
        document = self.read(path)
        if document is None:
            return 0
        if (document.rank, document.level) != (engine.rank, engine.level):
            raise CacheCorruptError(
                f"Memo file {path} is for r={document.rank}, k={document.level}, "
                f"not r={engine.rank}, k={engine.level}"
            )
        count = engine.import_entries(document.values().items())
        logger.info("Memo loaded", path=str(path), entries=count)
        return count

    def store(self, engine: FusionEngine, path: Optional[Path] = None) -> int:
        path = Path(path) if path is not None else self.path_for(engine.rank, engine.level)
        entries = {key: str(value) for key, value in engine.export_entries().items()}
        document = CacheDocument(version=CACHE_FORMAT_VERSION, rank=engine.rank, level=engine.level, entries=entries)
        self.write(path, document)
        logger.info("Memo stored", path=str(path), entries=len(entries))
        return len(entries)

    def import_file(self, source: Path) -> CacheDocument:
        """Validate a memo file and copy it into the cache directory."""
        document = self.read(source)
        if document is None:
            raise CacheCorruptError(f"Memo file {source} is empty")
        document.values()
        self.write(self.path_for(document.rank, document.level), document)
        return document

    def clear(self, rank: Optional[int] = None, level: Optional[int] = None) -> int:
        """Remove memo files, all of them or the one for (rank, level); returns the file count."""
        if rank is not None and level is not None:
            targets = [self.path_for(rank, level)]
        else:
            targets = self.list_files()
        removed = 0
        with self._lock:
            for path in targets:
                if path.exists():
                    path.unlink()
                    removed += 1
        logger.info("Memo files removed", count=removed, cache_dir=str(self.cache_dir))
        return removed


def cache_io(engine: FusionEngine, path: Path, mode: str, manager: Optional[CacheManager] = None) -> int:
    """Load or store the engine's memo table at path; returns the entry count."""
    manager = manager or CacheManager(Path(path).parent)
    if mode == "load":
        return manager.load(engine, path)
    if mode == "store":
        return manager.store(engine, path)
    raise PreconditionError(f"Unknown cache mode {mode!r}")
