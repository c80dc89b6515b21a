"""Numeric tolerances, engine limits, corpus defaults and logging settings.

Notes:
 - Every setting can be overridden through an environment variable prefixed with
   ``POSENC_`` (e.g. ``POSENC_QUANT_STEP=1e-8``) or a ``.env`` file.
 - List like values are stored as comma separated strings and exposed through
   convenience properties that parse them.
"""

import os
from pathlib import Path
from typing import List, Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library and CLI settings with environment variable support."""

    # Application Info
    PROJECT_NAME: str = "posenc-wl"
    VERSION: str = "0.1.0"
    DESCRIPTION: str = (
        "Graph positional encodings, RPE-augmented WL refinement and the "
        "distinguishing-power hierarchy between them"
    )

    # Tokenization
    QUANT_STEP: float = 1e-9
    FEATURE_QUANT_STEP: float = 1e-9

    # Numerics
    ZERO_TOL: float = 1e-8
    SYMMETRY_TOL: float = 1e-12
    EIGEN_GROUP_TOL: float = 1e-8
    DISTANCE_NEGATIVE_TOL: float = 1e-9

    # Engine limits
    ORACLE_MAX_N: int = 10
    TWO_WL_MAX_N: int = 64
    POWER_STACK_MAX_N: int = 8

    # Corpora
    CSL_N: int = 41
    CSL_SKIPS: str = "2,3,4,5,6,9,11,12,13,16"
    SPECTRAL_FUNCTIONS: str = "inv,exp,exp2,sq"

    # Execution
    JOBS: int = 0  # 0 means one worker per available core
    SEED: int = 0

    # Reports
    REPORT_FORMAT: str = "json"
    REPORT_SCHEMA_VERSION: str = "1.0"

    # Logging Configuration
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"
    LOG_DIR: Optional[str] = None

    @field_validator("QUANT_STEP", "FEATURE_QUANT_STEP", "ZERO_TOL", "EIGEN_GROUP_TOL")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Tolerances and quantization steps must be strictly positive."""
        if not v > 0:
            raise ValueError("must be strictly positive")
        return v

    @field_validator("REPORT_FORMAT")
    @classmethod
    def validate_report_format(cls, v: str) -> str:
        fmt = v.lower()
        if fmt not in {"json", "csv", "jsonl"}:
            raise ValueError(f"unsupported report format: {v}")
        return fmt

    @property
    def csl_skips_list(self) -> List[int]:
        """Get the frozen CSL skip set as a list."""
        return [int(s) for s in self.CSL_SKIPS.split(",") if s.strip()]

    @property
    def spectral_functions_list(self) -> List[str]:
        """Get the frozen spectral-function names as a list."""
        return [f.strip() for f in self.SPECTRAL_FUNCTIONS.split(",") if f.strip()]

    @property
    def jobs_resolved(self) -> int:
        """Worker count, resolving 0 to the number of available cores."""
        if self.JOBS > 0:
            return self.JOBS
        return os.cpu_count() or 1

    @property
    def log_path(self) -> Optional[Path]:
        """Get log folder as Path object, if file logging is enabled."""
        return Path(self.LOG_DIR) if self.LOG_DIR else None

    model_config = SettingsConfigDict(
        env_prefix="POSENC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get settings instance shared by processors and the CLI."""
    return settings
