import sys
from pathlib import Path

# Make `src` and `config` importable when pytest runs from anywhere
sys.path.insert(0, str(Path(__file__).parent))

from src.utils.logger import Logger

Logger.configure(quiet=True)
