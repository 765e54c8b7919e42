"""Process-level settings loaded from environment variables."""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime knobs that are not part of any algorithm configuration.

    Every field has a default, so nothing needs to be set in the environment.
    Overrides use the ``RICCI_FOSTER_`` prefix, e.g. ``RICCI_FOSTER_LOG_LEVEL=DEBUG``.
    """

    model_config = SettingsConfigDict(env_prefix="RICCI_FOSTER_", case_sensitive=False)

    # Logging
    log_level: str = Field(default="INFO")
    log_file: Optional[str] = Field(default=None)

    # Benchmark harness
    benchmark_workers: int = Field(default=1, ge=1)
    sbm_resample_tries: int = Field(default=10, ge=1)


# Global settings instance
settings = Settings()
