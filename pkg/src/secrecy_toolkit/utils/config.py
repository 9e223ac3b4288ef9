"""Environment-driven configuration for the secrecy toolkit.

Values come from environment variables, optionally loaded from a `.env`
file. Environment variables already set take precedence.
"""

import os
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv(override=False)

# =============================================================================
# Parallelism
# =============================================================================

# Upper bound on worker threads for cascade evaluation and simulation trials
THREADS_ENV_VAR = "SECRECY_TOOLKIT_THREADS"


def _read_threads() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            return 1
    return min(8, os.cpu_count() or 1)


THREADS = _read_threads()


def worker_count(requested: Optional[int] = None) -> int:
    """Number of workers to use, capped by SECRECY_TOOLKIT_THREADS."""
    cap = _read_threads()
    if requested is None:
        return cap
    return max(1, min(requested, cap))


# =============================================================================
# Output Configuration
# =============================================================================

OUTPUT_DIR = Path(os.environ.get("SECRECY_TOOLKIT_OUTPUT_DIR", "./secrecy_output"))


def init_output_dir(path: Optional[Path] = None) -> Path:
    """Create the output directory if it doesn't exist."""
    target = Path(path) if path is not None else OUTPUT_DIR
    target.mkdir(parents=True, exist_ok=True)
    return target


# =============================================================================
# Logging Configuration
# =============================================================================

# Logging level: "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"
LOG_LEVEL = os.environ.get("LOG_LEVEL", "WARNING")

LOG_FILE = Path(os.environ.get("LOG_FILE", "./secrecy_toolkit.log"))

LOG_TO_CONSOLE = os.environ.get("LOG_TO_CONSOLE", "True").lower() == "true"

# File logging stays off unless asked for; commands write results, not logs
LOG_TO_FILE = os.environ.get("LOG_TO_FILE", "False").lower() == "true"

DEBUG_MODE = os.environ.get("DEBUG_MODE", "False").lower() == "true"


# =============================================================================
# Validation
# =============================================================================


def validate_config() -> List[str]:
    """Return human-readable warnings about the current environment."""
    warnings = []

    raw = os.environ.get(THREADS_ENV_VAR, "")
    if raw.strip():
        try:
            if int(raw) < 1:
                warnings.append(f"{THREADS_ENV_VAR}={raw} is below 1; using 1 worker")
        except ValueError:
            warnings.append(f"{THREADS_ENV_VAR}={raw!r} is not an integer; using 1 worker")

    if LOG_LEVEL.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        warnings.append(f"LOG_LEVEL={LOG_LEVEL!r} is not a logging level")

    if LOG_TO_FILE and not LOG_FILE.parent.exists():
        warnings.append(f"Log directory {LOG_FILE.parent} does not exist yet; it will be created")

    return warnings
