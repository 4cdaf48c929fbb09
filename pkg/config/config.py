"""
Configuration module for the rate region toolkit
"""
import os
from pathlib import Path

from dotenv import load_dotenv

from src.models.types import DEFAULTS, PATHS

# Load environment variables
load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Configuration class for the application"""

    def __init__(self):
        # Output
        self.output_dir = Path(os.getenv('RATE_REGION_OUTPUT_DIR', str(PATHS.RESULTS)))
        self.formats = [f.strip() for f in os.getenv('RATE_REGION_FORMATS', ','.join(DEFAULTS.FORMATS)).split(',') if f.strip()]
        self.log_base = float(os.getenv('RATE_REGION_LOG_BASE', DEFAULTS.LOG_BASE))

        # Numerics
        self.tol = float(os.getenv('RATE_REGION_TOL', DEFAULTS.INCLUSION_TOL))
        self.grid_points = int(os.getenv('RATE_REGION_GRID_POINTS', DEFAULTS.GRID_POINTS))
        self.max_alphabet = int(os.getenv('RATE_REGION_MAX_ALPHABET', DEFAULTS.MAX_ALPHABET))

        # Sweep concurrency
        self.max_workers = int(os.getenv('RATE_REGION_MAX_WORKERS', DEFAULTS.MAX_WORKERS))

        # Console output (file logs are always written)
        self.quiet = _env_bool('RATE_REGION_QUIET', False)


# Create global config instance
config = Config()
