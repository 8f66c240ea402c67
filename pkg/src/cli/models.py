"""
Validated command configuration and machine-readable reports.
"""

from pathlib import Path
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from src.config import MAX_GENUS, MAX_LEVEL, MAX_RANK, EngineConfig, get_settings
from src.engines.evaluator import EngineChoice
from src.engines.selfcheck import SelfcheckBounds

Range = Tuple[int, int]


def parse_range(text: str) -> Range:
    """"a..b" or a single integer "a"; a > b gives an empty range."""
    text = str(text).strip()
    low, sep, high = text.partition("..")
    try:
        return (int(low), int(high)) if sep else (int(low), int(low))
    except ValueError as e:
        raise ValueError(f"Cannot parse range {text!r}; expected a..b") from e


class CliConfig(BaseModel):
    """Everything a command needs, validated before any computation"""

    command: Literal["compute", "fusion", "table", "selfcheck", "cache"]

    # Instance
    genus: int = Field(default=0, ge=0, le=MAX_GENUS)
    rank: int = Field(default=1, ge=1, le=MAX_RANK)
    degree: int = Field(default=0, ge=-10_000, le=10_000)
    level: int = Field(default=1, ge=1, le=MAX_LEVEL)
    weights: str = ""
    engine: EngineChoice = EngineChoice.ANALYTIC
    format: Literal["plain", "json", "csv"] = "plain"

    # Fusion
    a: Optional[str] = None
    b: Optional[str] = None
    c: Optional[str] = None

    # Table
    genus_range: Range = (0, 0)
    level_range: Range = (1, 1)
    degree_range: Range = (0, 0)

    # Engine knobs
    tolerance: Optional[float] = Field(default=None, gt=0)
    identity_tolerance: Optional[float] = Field(default=None, gt=0)
    dps: Optional[int] = Field(default=None, ge=20, le=2000)
    workers: int = Field(default=1, ge=1, le=64)
    trace: bool = False

    # Cache
    cache_dir: Optional[Path] = None
    use_cache: bool = False
    action: Optional[Literal["export", "import", "clear"]] = None
    file: Optional[Path] = None
    out: Optional[Path] = None
    clear_rank: Optional[int] = Field(default=None, ge=1, le=MAX_RANK)
    clear_level: Optional[int] = Field(default=None, ge=1, le=MAX_LEVEL)

    # Selfcheck
    max_rank: int = 3
    max_level: int = 3
    max_genus: int = 2
    trials: int = 200
    seed: int = 0

    @field_validator("genus_range", "level_range", "degree_range", mode="before")
    @classmethod
    def _ranges(cls, value):
        if isinstance(value, str):
            return parse_range(value)
        return value

    @field_validator("level_range")
    @classmethod
    def _level_range(cls, value: Range) -> Range:
        low, high = value
        if low <= high and (low < 1 or high > MAX_LEVEL):
            raise ValueError(f"Level range {low}..{high} outside 1..{MAX_LEVEL}")
        return value

    @field_validator("genus_range")
    @classmethod
    def _genus_range(cls, value: Range) -> Range:
        low, high = value
        if low <= high and (low < 0 or high > MAX_GENUS):
            raise ValueError(f"Genus range {low}..{high} outside 0..{MAX_GENUS}")
        return value

    def engine_config(self) -> EngineConfig:
        overrides = {"workers": self.workers}
        if self.tolerance is not None:
            overrides["rounding_tolerance"] = self.tolerance
        if self.identity_tolerance is not None:
            overrides["identity_tolerance"] = self.identity_tolerance
        if self.dps is not None:
            overrides["high_precision_dps"] = self.dps
        return EngineConfig(**overrides)

    def selfcheck_bounds(self) -> SelfcheckBounds:
        return SelfcheckBounds(
            max_rank=self.max_rank,
            max_level=self.max_level,
            max_genus=self.max_genus,
            trials=self.trials,
            seed=self.seed,
        )

    def resolved_cache_dir(self) -> Path:
        return self.cache_dir if self.cache_dir is not None else get_settings().cache_dir


class ComputeReport(BaseModel):
    """JSON output of compute; value is a decimal string"""
    genus: int
    rank: int
    degree: int
    level: int
    weights: str
    value: str
    engine: str
    residual: float
    millis: float


class FusionReport(BaseModel):
    """JSON output of fusion"""
    rank: int
    level: int
    a: str
    b: str
    c: str
    value: str
