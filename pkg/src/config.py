"""
Configuration management for the Verlinde number calculator
Environment-backed settings via Pydantic Settings, engine knobs via Pydantic models
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process settings with environment variable support.

    Only locations and logging are environment-driven; everything that
    changes a computed number is passed explicitly (CLI flags or code).
    """

    # Storage
    cache_dir: Path = Field(default=Path("data/cache"), description="Directory holding fusion memo files")

    # Logging
    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: Literal["text", "json"] = Field(default="text", description="Log format: json or text")

    model_config = SettingsConfigDict(
        env_prefix="VERLINDE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Global settings instance
_settings = None

def get_settings() -> Settings:
    """Get global settings instance"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None


class EngineConfig(BaseModel):
    """Numerical and recursion limits shared by both engines."""

    model_config = ConfigDict(frozen=True)

    identity_tolerance: float = Field(default=1e-9, gt=0, description="Residual bound for character identities")
    rounding_tolerance: float = Field(default=1e-6, gt=0, description="Distance allowed between a raw sum and its integer")
    high_precision_dps: int = Field(default=30, ge=20, description="Decimal digits of the mpmath escalation")
    precision_headroom: int = Field(default=25, ge=5, description="Digits kept beyond the magnitude of a result")
    max_condition: float = Field(default=1e10, gt=1, description="Vandermonde condition-number budget")
    recursion_limit: int = Field(default=10_000, ge=10, description="Depth cap of the recursive engines")
    workers: int = Field(default=1, ge=1, le=64, description="Term-level parallelism of the analytic sum")
    verify_vanishing: bool = Field(default=False, description="Evaluate the raw sum on non-divisible data too")


DEFAULT_ENGINE_CONFIG = EngineConfig()

# Digits a complex128 evaluation is trusted with
DOUBLE_DIGITS = 15

# Safety factor applied to the precision floor estimate
PRECISION_SAFETY = 10.0

# Desk-scale bounds accepted by the CLI
MAX_RANK = 8
MAX_LEVEL = 64
MAX_GENUS = 64

CACHE_FORMAT_VERSION = 1
