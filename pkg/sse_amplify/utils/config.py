from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Exact oracle
    EXACT_CAP: int = 20
    TIE_TOLERANCE: float = 1e-12
    ORACLE_CHUNK_BITS: int = 16

    # Dense walk backend
    DENSE_CAP: int = 4096
    DROP_TOLERANCE: float = 1e-14

    # Expander replacement
    KAPPA: float = 0.01
    EXPANDER_RETRY_CAP: int = 1000
    EXPANDER_BRUTE_FORCE_CAP: int = 16

    # Sweep heuristic
    HEURISTIC_MAX_SEEDS: int = 128
    HEURISTIC_WALK_STEPS: int = 32

    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="SSE_AMPLIFY_", env_file=".env", extra="ignore"
    )


settings = Settings()
