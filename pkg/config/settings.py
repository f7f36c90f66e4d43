"""Application configuration settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library and CLI settings, overridable from `.env` or JLRIP_* variables."""

    # Application
    APP_NAME: str = "rip-jl-embed"
    APP_VERSION: str = "0.1.0"
    LOG_LEVEL: str = "WARNING"

    # Resource caps
    DENSIFY_CAP: int = 2 ** 22
    RIP_ENUMERATION_CAP: int = 10 ** 6
    RIP_BATCH_SIZE: int = 20000
    PROP_C_MAX_DIM: int = 2048
    SPECTRAL_SVD_MAX_DIM: int = 512
    POWER_ITER_MAX: int = 10000

    # Tolerances
    SPECTRAL_TOL: float = 1e-10
    INEQUALITY_TOL: float = 1e-10
    TAIL_SLACK_SIGMAS: float = 3.0
    MIN_TAIL_TRIALS: int = 1000
    TAIL_CHUNK: int = 10000

    # Seeds (fixed, never time based)
    DEFAULT_MATRIX_SEED: int = 0
    DEFAULT_SIGN_SEED: int = 1
    DEFAULT_DATA_SEED: int = 2
    DEFAULT_ROOT_SEED: int = 2024

    # Harness
    MIN_M_RESOLUTION_DIVISOR: int = 16
    JOBS: int = 1
    SPARSE_SUPPORT: int = 8

    # Verification suite sizes
    VERIFY_MATRICES: int = 100
    VERIFY_VECTORS_PER_MATRIX: int = 1000
    VERIFY_INSTANCES: int = 1000
    VERIFY_M: int = 20
    VERIFY_N: int = 40
    VERIFY_S: int = 2
    VERIFY_TAIL_TRIALS: int = 100000
    VERIFY_TAIL_DIM: int = 64
    VERIFY_CHAOS_DIM: int = 16
    VERIFY_THEOREM_N: int = 128
    VERIFY_THEOREM_M: int = 32768
    VERIFY_THEOREM_P: int = 2
    VERIFY_THEOREM_ETA: float = 0.75
    VERIFY_THEOREM_EPSILON: float = 0.9
    VERIFY_SIGN_TRIALS: int = 200
    VERIFY_NULLSPACE_N: int = 1024
    VERIFY_NULLSPACE_M: int = 512
    VERIFY_CONCENTRATION_N: int = 256
    VERIFY_CONCENTRATION_EPSILON: float = 0.5
    VERIFY_CONCENTRATION_TRIALS: int = 200

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="JLRIP_",
        case_sensitive=True,
        extra="ignore"
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings instance."""
    return settings
