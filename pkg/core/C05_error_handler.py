# ====================================================================================================
# C05_error_handler.py
# ----------------------------------------------------------------------------------------------------
# Centralised error handling for SafeScreen.
#
# Purpose:
#   - Define the project exception hierarchy and the exit code each category maps to.
#   - Provide a unified error-handling interface for the CLI and library callers.
#   - Render machine-parsable error lines for standard error.
#   - Capture and log all uncaught exceptions via sys.excepthook.
#
# Usage:
#   from core.C05_error_handler import (
#       DataError,
#       NumericalError,
#       handle_error,
#       format_error_line,
#   )
#
#   try:
#       run_command()
#   except SafeScreenError as exc:
#       exit_code = handle_error(exc, context="screen command")
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
#   ALL external (and commonly-used standard-library) packages must be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
from core.C04_config_loader import get_config


# ====================================================================================================
# 3. EXIT CODES
# ----------------------------------------------------------------------------------------------------
EXIT_SUCCESS: int = 0
EXIT_USAGE: int = 1
EXIT_DATA: int = 2
EXIT_NUMERICAL: int = 3

ERROR_PREFIX: str = "safescreen-error"


# ====================================================================================================
# 4. EXCEPTION HIERARCHY
# ----------------------------------------------------------------------------------------------------
class SafeScreenError(Exception):
    """
    Description:
        Base class for every error raised deliberately by SafeScreen.

    Notes:
        - `category` feeds the machine-parsable stderr prefix.
        - `exit_code` is the process exit status used by the CLI.
    """

    category: str = "error"
    exit_code: int = EXIT_NUMERICAL


class UsageError(SafeScreenError):
    """Invalid arguments or preconditions supplied by the caller."""

    category = "usage"
    exit_code = EXIT_USAGE


class DataError(SafeScreenError):
    """Malformed input data: parse failures, dimension mismatches, bad labels, bad indices."""

    category = "data"
    exit_code = EXIT_DATA


class NumericalError(SafeScreenError):
    """A numerical procedure could not deliver a certified result."""

    category = "numerical"
    exit_code = EXIT_NUMERICAL


class InvalidGeometryError(NumericalError):
    """A radicand of the screening geometry is negative beyond round-off (inconsistent warm start)."""


class ConvergenceError(NumericalError):
    """An iterative search or solver exhausted its iteration budget."""


class BudgetInfeasibleError(NumericalError):
    """
    Description:
        No tested penalty value meets the feature budget.

    Args:
        message (str): Human-readable explanation.
        best_lambda (float | None): Penalty of the best tested point.
        best_kept (int | None): Kept-feature count at that point.
    """

    def __init__(self, message: str, best_lambda: float | None = None, best_kept: int | None = None) -> None:
        super().__init__(message)
        self.best_lambda = best_lambda
        self.best_kept = best_kept


class RecertificationError(NumericalError):
    """A reduced solution failed its full-problem duality-gap check."""


# ====================================================================================================
# 5. GLOBAL ERROR HANDLING FUNCTIONS
# ----------------------------------------------------------------------------------------------------
def exit_code_for(exception: BaseException) -> int:
    """
    Description:
        Maps an exception to the CLI exit code.

    Args:
        exception (BaseException): The exception to classify.

    Returns:
        int: 1 usage, 2 data, 3 numerical / unexpected.

    Raises:
        None.

    Notes:
        - File-system and decoding failures count as data errors.
    """
    if isinstance(exception, SafeScreenError):
        return exception.exit_code
    if isinstance(exception, (FileNotFoundError, json.JSONDecodeError, UnicodeDecodeError)):
        return EXIT_DATA
    return EXIT_NUMERICAL


def format_error_line(exception: BaseException) -> str:
    """
    Description:
        Renders the single machine-parsable line written to standard error.

    Args:
        exception (BaseException): The exception being reported.

    Returns:
        str: Text of the form "safescreen-error[<category>]: <message>".

    Raises:
        None.
    """
    if isinstance(exception, SafeScreenError):
        category = exception.category
    else:
        category = {EXIT_USAGE: "usage", EXIT_DATA: "data"}.get(exit_code_for(exception), "numerical")
    message = str(exception) or type(exception).__name__
    return f"{ERROR_PREFIX}[{category}]: {message}"


def handle_error(exception: Exception, context: str = "", fatal: bool = False) -> int:
    """
    Description:
        Handles an exception by logging it and returning the exit code it maps to,
        optionally triggering a fatal exit depending on configuration settings.

    Args:
        exception (Exception): The exception object to be handled.
        context (str, optional): Additional information describing where the error
            occurred. Defaults to an empty string.
        fatal (bool, optional): Whether the error should be treated as fatal. If True,
            behaviour depends on CONFIG["error_handling"]["exit_on_fatal"].

    Returns:
        int: The exit code for the exception.

    Raises:
        SystemExit: If fatal=True and configuration enables fatal exiting.

    Notes:
        - Expected SafeScreen errors are logged without a traceback; anything else
          is logged with full traceback via log_exception().
    """
    code = exit_code_for(exception)

    if isinstance(exception, SafeScreenError):
        context_text = f" during {context}" if context else ""
        logger.error("%s%s: %s", type(exception).__name__, context_text, exception)
    else:
        log_exception(exception, context=context)

    exit_on_fatal = get_config("error_handling", "exit_on_fatal", default=False)
    if fatal and exit_on_fatal:
        logger.error("Fatal error encountered. Exiting application.")
        sys.exit(code)

    return code


def global_exception_hook(exc_type, exc_value, exc_traceback) -> None:
    """
    Description:
        Global fallback handler for uncaught exceptions. Installed via
        install_global_exception_hook().

    Args:
        exc_type (type): The exception class.
        exc_value (Exception): The exception instance.
        exc_traceback (TracebackType): The associated traceback.

    Returns:
        None.

    Raises:
        None.

    Notes:
        - KeyboardInterrupt is passed through cleanly to avoid noisy logs.
    """
    if issubclass(exc_type, KeyboardInterrupt):
        logger.info("Application interrupted by user (Ctrl+C).")
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger.error("Unhandled Exception", exc_info=(exc_type, exc_value, exc_traceback))
    handle_error(exc_value, context="Unhandled Exception", fatal=True)


def install_global_exception_hook() -> None:
    """
    Description:
        Installs the custom global exception hook so uncaught exceptions are logged
        consistently.

    Args:
        None.

    Returns:
        None.

    Raises:
        None.
    """
    sys.excepthook = global_exception_hook
    logger.debug("Global exception hook installed.")


# ====================================================================================================
# 6. MAIN EXECUTION (STANDALONE TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging()
    logger.info("C05_error_handler self-test started.")
    install_global_exception_hook()

    for sample in (UsageError("missing --data"), DataError("line 3: bad token"), ConvergenceError("200 iterations")):
        code = handle_error(sample, context="standalone test")
        logger.info("%s -> exit %s", format_error_line(sample), code)

    logger.info("C05_error_handler self-test complete.")
