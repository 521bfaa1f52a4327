from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LASTFIRST_",
        env_file=".env",
        extra="ignore",
    )

    # Logging configuration
    LOG_LEVEL: str = "INFO"
    # If LOG_DB_PATH is None, records only go to the console
    LOG_DB_PATH: str | None = None

    NUM_WORKERS: int = 1
    DEFAULT_RNG_SEED: int = 0

    NEIGHBORHOOD_SIZE: int = 180

    BENCH_TIMEOUT: float = 3600.0
    FLOAT_FORMAT: str = "%.12g"

    def model_post_init(self, __context) -> None:
        if self.NUM_WORKERS < 1:
            raise ValueError("NUM_WORKERS must be at least 1.")
        if self.NEIGHBORHOOD_SIZE < 1:
            raise ValueError("NEIGHBORHOOD_SIZE must be at least 1.")
        if self.BENCH_TIMEOUT <= 0:
            raise ValueError("BENCH_TIMEOUT must be positive.")
        self.LOG_LEVEL = self.LOG_LEVEL.upper()


settings = Settings()
