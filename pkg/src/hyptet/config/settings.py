# config/settings.py
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

BASE_DIR = os.path.dirname(os.path.dirname(__file__))  # points to src/hyptet
DOTENV_PATH = os.path.join(BASE_DIR, ".env")
load_dotenv(DOTENV_PATH)
load_dotenv()


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else default


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw in (None, ""):
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Numerical tolerances and runtime switches, overridable through HYPTET_* variables."""

    log_level: str = "INFO"
    environment: str = "development"
    degeneracy_tol: float = Field(1e-8, gt=0)
    generic_tol: float = Field(1e-8, gt=0)
    euclidean_tol: float = Field(1e-9, gt=0)
    ft_tol: float = Field(1e-10, gt=0)
    holonomy_tol: float = Field(1e-9, gt=0)
    oracle_tol: float = Field(1e-7, gt=0)
    workers: int = Field(0, ge=0)
    metrics_enabled: bool = True

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            log_level=os.getenv("HYPTET_LOG_LEVEL", "INFO"),
            environment=os.getenv("HYPTET_ENVIRONMENT", "development"),
            degeneracy_tol=_env_float("HYPTET_DEGENERACY_TOL", 1e-8),
            generic_tol=_env_float("HYPTET_GENERIC_TOL", 1e-8),
            euclidean_tol=_env_float("HYPTET_EUCLIDEAN_TOL", 1e-9),
            ft_tol=_env_float("HYPTET_FT_TOL", 1e-10),
            holonomy_tol=_env_float("HYPTET_HOLONOMY_TOL", 1e-9),
            oracle_tol=_env_float("HYPTET_ORACLE_TOL", 1e-7),
            workers=int(_env_float("HYPTET_WORKERS", 0)),
            metrics_enabled=_env_bool("HYPTET_METRICS_ENABLED", True),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
