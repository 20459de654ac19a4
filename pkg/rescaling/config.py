"""
Configuration settings for the Rescaling Toolkit
"""
from pathlib import Path
from pydantic_settings import BaseSettings

BASE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application settings"""

    # Application
    APP_NAME: str = "Rescaling Toolkit"
    DEBUG: bool = False
    VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Truncation defaults
    DEFAULT_TRUNCATION: int = 12
    DEFAULT_K: int = 1

    # Chevalley-Eilenberg cutoffs
    CE_MAX_UPPER_DEGREE: int = 4
    CE_MAX_WEIGHT: int = 5

    # Holonomy dims beyond this bracket length are not computed by reports
    HOLONOMY_MAX_WEIGHT: int = 8

    # Work budget (pairs per degree) for quotients T(V)/(R): the quadratic
    # dual fallback and enveloping algebras behind Lie dimensions
    QUOTIENT_MAX_PAIRS: int = 400000

    # Property tests and random samples
    DEFAULT_RANDOM_SEED: int = 1729

    # Bundled examples
    EXAMPLES_DIR: Path = BASE_DIR / "data" / "examples"

    class Config:
        env_file = ".env"
        env_prefix = "RESCALING_"
        extra = "allow"


settings = Settings()
