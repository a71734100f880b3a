"""Application settings using pydantic-settings."""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="ISING_BENCH_",
        case_sensitive=False,
    )

    # Oracle
    oracle_max_spins: int = Field(default=24, ge=1, le=40)
    oracle_chunk_bits: int = Field(default=16, ge=1, le=24)

    # Benchmark execution
    workers: int = Field(default=1, ge=1)
    repetition_chunk: int = Field(default=250, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2**64)
    output_dir: Path = Path("runs")
    default_repetitions: int = Field(default=100, ge=1)

    # Annealer diagnostics
    debug: bool = False
    energy_check_interval: int = Field(default=1024, ge=1)

    # Application
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
