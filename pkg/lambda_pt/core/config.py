from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Process-wide settings, read from ``LAMBDA_PT_*`` environment variables
    or a local ``.env`` file.
    """

    THREADS: int = 0
    LOG_LEVEL: str = "WARNING"
    EP_TOL: float = 1e-10
    SINGULAR_TOL: float = 1e-12
    OVERFLOW_LIMIT: float = 1e12
    DEBUG_METRIC_SCALE: float = 1.0

    model_config = SettingsConfigDict(
        env_prefix="LAMBDA_PT_", env_file=".env", extra="ignore"
    )

    @property
    def max_workers(self) -> Optional[int]:
        """Executor worker cap; ``None`` lets the executor pick its default."""
        return self.THREADS if self.THREADS > 0 else None


settings = Settings()
