"""Runtime configuration for fusion2s"""

import os
import logging
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from fusion2s.infrastructure.errors import InputError

logger = logging.getLogger(__name__)

ENV_MAX_GROUP = "FUSION2S_MAX_GROUP"
ENV_ORACLE_MAX_GROUP = "FUSION2S_ORACLE_MAX_GROUP"
ENV_EXHAUSTIVE_LIMIT = "FUSION2S_EXHAUSTIVE_LIMIT"
ENV_TOLERANCE = "FUSION2S_TOLERANCE"
ENV_SCAN_WORKERS = "FUSION2S_SCAN_WORKERS"


class Settings(BaseModel):
    """Size caps and numeric tolerances shared by every computation"""
    max_group_size: int = Field(4096, ge=1, description="Largest group order any enumeration accepts")
    oracle_max_group_size: int = Field(64, ge=1, description="Largest group order for the Drinfeld-center path")
    exhaustive_check_limit: int = Field(64, ge=1, description="Group order up to which validation checks every triple")
    tolerance: float = Field(1e-9, gt=0, description="Tolerance for floating-point orthogonality checks")
    scan_workers: int = Field(
        default_factory=lambda: os.cpu_count() or 1, ge=1, description="Worker processes used by scans (default: CPU count)"
    )


def _read(name: str, cast, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError as e:
        raise InputError(f"Environment variable {name} has invalid value {raw!r}") from e


@lru_cache()
def get_settings() -> Settings:
    """Get settings from the environment (and a local .env file, if present)"""
    load_dotenv()
    defaults = Settings()
    try:
        settings = Settings(
            max_group_size=_read(ENV_MAX_GROUP, int, defaults.max_group_size),
            oracle_max_group_size=_read(ENV_ORACLE_MAX_GROUP, int, defaults.oracle_max_group_size),
            exhaustive_check_limit=_read(ENV_EXHAUSTIVE_LIMIT, int, defaults.exhaustive_check_limit),
            tolerance=_read(ENV_TOLERANCE, float, defaults.tolerance),
            scan_workers=_read(ENV_SCAN_WORKERS, int, defaults.scan_workers),
        )
    except ValidationError as e:
        raise InputError(f"Invalid fusion2s settings: {e}") from e
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
