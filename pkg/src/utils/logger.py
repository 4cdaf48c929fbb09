"""
Logger utility for rate region runs
"""
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

from src.models.types import PATHS


class Logger:
    """Console + file logger shared by the services and the CLI"""
    _log_file_path = PATHS.LOGS / "app.log"
    _debug_log_file_path = PATHS.LOGS / "debug.log"
    _quiet = False

    @staticmethod
    def configure(quiet: Optional[bool] = None, log_dir: Optional[Path] = None):
        """Switch console output on/off and optionally relocate the log files"""
        if quiet is not None:
            Logger._quiet = bool(quiet)
        if log_dir is not None:
            Logger._log_file_path = Path(log_dir) / "app.log"
            Logger._debug_log_file_path = Path(log_dir) / "debug.log"

    @staticmethod
    def _append(path: Path, message: str):
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'a', encoding='utf-8') as f:
                f.write(message + "\n")
        except Exception:
            # Logging never raises
            pass

    @staticmethod
    def _emit(text: str, debug_copy: bool = False):
        if not Logger._quiet:
            print(text)
        Logger._append(Logger._log_file_path, text)
        if debug_copy:
            Logger._append(Logger._debug_log_file_path, text)

    @staticmethod
    def _timestamp():
        """Get current timestamp"""
        return datetime.now().strftime("%H:%M:%S")

    @staticmethod
    def header(message: str):
        """Log a header message"""
        rule = '=' * 60
        for text in (f"\n{rule}", f"🚀 {message}", rule):
            Logger._emit(text)

    @staticmethod
    def step(step_number: int, message: str):
        """Log a step message"""
        Logger._emit(f"\n📋 Step {step_number}: {message}")
        Logger._emit('─' * 50)

    @staticmethod
    def info(message: str):
        Logger._emit(f"[{Logger._timestamp()}] ℹ️  {message}", debug_copy=True)

    @staticmethod
    def success(message: str):
        Logger._emit(f"[{Logger._timestamp()}] ✅ {message}")

    @staticmethod
    def warning(message: str):
        Logger._emit(f"[{Logger._timestamp()}] ⚠️  {message}")

    @staticmethod
    def error(message: str, error: Any = None):
        if error:
            text = f"[{Logger._timestamp()}] ❌ {message}: {error}"
        else:
            text = f"[{Logger._timestamp()}] ❌ {message}"
        Logger._emit(text)

    @staticmethod
    def debug(message: str):
        Logger._emit(f"[{Logger._timestamp()}] 🐛 {message}", debug_copy=True)

    @staticmethod
    def progress(current: int, total: int, message: str = ""):
        """Render a progress bar for sweep chunks"""
        total = max(total, 1)
        percentage = (current / total) * 100
        bar_length = 30
        filled_length = int(bar_length * current // total)
        bar = '█' * filled_length + '░' * (bar_length - filled_length)
        text = f"[{bar}] {percentage:.1f}% {message}"
        if not Logger._quiet:
            print(f"\r{text}", end='', flush=True)
            if current >= total:
                print()
        Logger._append(Logger._log_file_path, text)
