"""
Configuration for PIR Analytics
Values come from PIR_* environment variables or a local .env file
"""

import os
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="PIR_", env_file=".env", extra="ignore")

    # Value of a rescaled variable whose context range is empty (max == min)
    degenerate_value: float = Field(0.5, ge=0.0, le=1.0)
    iqr_multiplier: float = Field(1.5, gt=0.0)
    # Variables that are identically zero in the data get effective weight 0
    zero_weight_constant_variables: bool = True

    table_decimals: int = Field(4, ge=0, le=12)
    log_level: str = "WARNING"
    log_json: bool = False
    no_color: bool = False

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"unknown log level {v!r}")
        return level

    @property
    def color_enabled(self) -> bool:
        return not (self.no_color or "NO_COLOR" in os.environ)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Cached settings instance"""
    return Settings()
