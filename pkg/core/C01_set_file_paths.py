# ====================================================================================================
# C01_set_file_paths.py
# ----------------------------------------------------------------------------------------------------
# Centralises all key file and directory paths for the project.
#
# Purpose:
#   - Provide a single source of truth for project root detection.
#   - Define standardised directory constants (data, logs, config, outputs).
#   - Provide small, safe helper utilities for building file paths.
#   - Avoid ALL side effects at import time (no directory or file creation).
#
# Usage:
#   from core.C01_set_file_paths import (
#       PROJECT_ROOT,
#       CONFIG_DIR,
#       REPORT_SCHEMA_FILE,
#       path_exists_safely,
#   )
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-11-18
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
# These imports (sys, pathlib.Path) are required to correctly initialise the project environment,
# ensure the core library can be imported safely (including C00_set_packages.py),
# and prevent project-local paths from overriding installed site-packages.
# ----------------------------------------------------------------------------------------------------

# --- Future behaviour & type system enhancements -----------------------------------------------------
from __future__ import annotations           # Future-proof type hinting (PEP 563 / PEP 649)

# --- Required for dynamic path handling and safe importing of core modules ---------------------------
import sys                                   # Python interpreter access (path, environment, runtime)
from pathlib import Path                     # Modern, object-oriented filesystem path handling

# --- Ensure project root DOES NOT override site-packages --------------------------------------------
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

# --- Remove '' (current working directory) which can shadow installed packages -----------------------
if "" in sys.path:
    sys.path.remove("")

# --- Prevent creation of __pycache__ folders ---------------------------------------------------------
sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
# Bring in shared external and standard-library packages from the central import hub.
#
# CRITICAL ARCHITECTURE RULE:
#   ALL external + stdlib packages MUST be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
# (None required for this module)


# ====================================================================================================
# 3. PROJECT ROOT
# ----------------------------------------------------------------------------------------------------
try:
    PROJECT_ROOT: Path = Path(__file__).resolve().parent.parent
except NameError:
    PROJECT_ROOT = Path.cwd()

PROJECT_NAME: str = PROJECT_ROOT.name


# ====================================================================================================
# 4. CORE DIRECTORIES
# ----------------------------------------------------------------------------------------------------
CONFIG_DIR: Path = PROJECT_ROOT / "config"
CORE_DIR: Path = PROJECT_ROOT / "core"
DATA_DIR: Path = PROJECT_ROOT / "data"
IMPLEMENTATION_DIR: Path = PROJECT_ROOT / "implementation"
LOGS_DIR: Path = PROJECT_ROOT / "logs"
MAIN_DIR: Path = PROJECT_ROOT / "main"
OUTPUTS_DIR: Path = PROJECT_ROOT / "outputs"
USER_GUIDES_DIR: Path = PROJECT_ROOT / "user_guides"

CORE_FOLDERS: tuple[Path, ...] = (
    CONFIG_DIR,
    CORE_DIR,
    DATA_DIR,
    IMPLEMENTATION_DIR,
    LOGS_DIR,
    MAIN_DIR,
    OUTPUTS_DIR,
    USER_GUIDES_DIR,
)


# ====================================================================================================
# 5. CHECKED-IN CONFIGURATION FILES
# ----------------------------------------------------------------------------------------------------
REPORT_SCHEMA_FILE: Path = CONFIG_DIR / "report_schema.yaml"


# ====================================================================================================
# 6. UTILITY FUNCTIONS
# ----------------------------------------------------------------------------------------------------
def path_exists_safely(path: Path) -> bool:
    """
    Description:
        Checks whether a path exists, suppressing filesystem errors.

    Args:
        path (Path): Path to check.

    Returns:
        bool: True if the path exists and is reachable, False otherwise.

    Raises:
        None.
    """
    try:
        return path.exists()
    except OSError as exc:
        logger.warning("Path check failed for %s: %s", path, exc)
        return False


# ====================================================================================================
# 7. MAIN EXECUTION (STANDALONE TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging()
    logger.info("C01_set_file_paths self-test started.")
    for folder in CORE_FOLDERS:
        logger.info("%-20s exists=%s", folder.name, path_exists_safely(folder))
    logger.info("C01_set_file_paths self-test complete.")
