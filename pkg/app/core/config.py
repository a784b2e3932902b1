"""
Application configuration using Pydantic BaseSettings
Reads environment variables from .env file
"""

from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""
    
    # Application Settings
    APP_TITLE: str = "Bonsai Mapping API"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"
    
    # Reproducibility
    BONSAI_SEED: Optional[int] = None
    
    # Routing cost
    STEINER_EXACT_LIMIT: int = 10
    DOUBLE_EXCITATION_SAMPLES: int = 200
    FULL_DOUBLE_ENUMERATION_LIMIT: int = 16
    
    # Dense verification back end
    ORACLE_MAX_MODES: int = 4
    ORACLE_MAX_QUBITS: int = 12
    RESIDUAL_TOLERANCE: float = 1e-12
    
    # Rendering
    UNICODE_OUTPUT: bool = False
    
    class Config:
        env_file = ".env"
        case_sensitive = True


# Global settings instance
settings = Settings()
