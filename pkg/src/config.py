import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


@dataclass(frozen=True)
class Settings:
    log_level: str
    log_dir: Optional[str]
    vertex_cap: int
    hint_check_depth: int
    default_budget: int
    nica_depth: int
    address_limit: int
    residual_tol: float
    projection_tol: float


def load_settings() -> Settings:
    """Read settings from the environment (and a .env file if present)"""
    return Settings(
        log_level=os.getenv("ODOMETER_LOG_LEVEL", "INFO").upper(),
        log_dir=os.getenv("ODOMETER_LOG_DIR") or None,
        vertex_cap=int(os.getenv("ODOMETER_VERTEX_CAP", "200000")),
        hint_check_depth=int(os.getenv("ODOMETER_HINT_CHECK_DEPTH", "8")),
        default_budget=int(os.getenv("ODOMETER_DEFAULT_BUDGET", "32")),
        nica_depth=int(os.getenv("ODOMETER_NICA_DEPTH", "6")),
        address_limit=int(os.getenv("ODOMETER_ADDRESS_LIMIT", "10000")),
        residual_tol=float(os.getenv("ODOMETER_RESIDUAL_TOL", "1e-12")),
        projection_tol=float(os.getenv("ODOMETER_PROJECTION_TOL", "1e-6")),
    )


settings = load_settings()
