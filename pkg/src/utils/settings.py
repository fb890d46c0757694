"""Runtime settings read from the environment (prefix ``TIESURVEY_``)."""

from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Process-wide knobs that are not part of an experiment document."""

    model_config = SettingsConfigDict(env_prefix="TIESURVEY_", extra="ignore")

    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Worker processes for trial and leave-one-out pools; 1 runs inline
    workers: int = Field(default=1, ge=1)

    # Redraws allowed when a survey draws zero seeds
    max_survey_retries: int = Field(default=20, ge=0)

    # Edges per sparse row-product chunk in the census kernels
    census_chunk_size: int = Field(default=50_000, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Cached settings instance."""
    return Settings()
