"""
Type definitions and constants for the application
"""
from pathlib import Path


class Paths:
    """Path constants for the application"""

    # Base paths
    BASE_DIR = Path(__file__).parent.parent.parent
    LOGS = BASE_DIR / "logs"
    RESULTS = BASE_DIR / "results"

    @classmethod
    def ensure_directories(cls):
        """Ensure all required directories exist"""
        cls.LOGS.mkdir(parents=True, exist_ok=True)
        cls.RESULTS.mkdir(parents=True, exist_ok=True)


class Defaults:
    """Default values for the application"""

    # Geometry
    CLIP_BITS = 64.0  # bits/use, bounding box for unbounded directions
    GEOM_TOL = 1e-9  # vertex dedup and collinearity
    INCLUSION_TOL = 1e-6

    # Arithmetic tolerances
    ROW_TOL = 1e-12  # FME row combination
    PMF_TOL = 1e-12  # conditional row normalization
    JOINT_TOL = 1e-10
    DEGRADED_TOL = 1e-12  # |g12*g21 - 1|

    # Sweeps
    GRID_POINTS = 41
    GAMMA_FRACTION = 0.999  # gamma^2 K < fraction * P
    BETA_EDGE = 0.025
    ALPHA22_RANGE = (-1.0, 1.0)
    MAX_WORKERS = 4
    CHUNK_SIZE = 4096  # parameter points per executor job

    # Finite alphabets
    MAX_ALPHABET = 4

    # Reporting
    LOG_BASE = 2.0
    FORMATS = ("csv", "json")
    BOUNDARY_SAMPLES = 101


# Initialize paths
PATHS = Paths()
PATHS.ensure_directories()

DEFAULTS = Defaults()
