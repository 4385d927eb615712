# ====================================================================================================
# C06_validation_utils.py
# ----------------------------------------------------------------------------------------------------
# Reusable validation guards for files, numeric inputs and report documents.
#
# Purpose:
#   - Fail early with the project exception hierarchy (DataError / UsageError).
#   - Keep precondition checks out of the numerical kernels.
#   - Validate report dictionaries against the checked-in report schema.
#
# Usage:
#   from core.C06_validation_utils import (
#       validate_file_exists,
#       validate_finite,
#       validate_labels,
#       validate_report_structure,
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
#   ALL external (and commonly-used standard-library) packages must be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
from core.C01_set_file_paths import REPORT_SCHEMA_FILE
from core.C05_error_handler import DataError, UsageError


# ====================================================================================================
# 3. FILE VALIDATION
# ----------------------------------------------------------------------------------------------------
def validate_file_exists(file_path: str | Path) -> bool:
    """
    Description:
        Validates that the specified file exists and is accessible.

    Args:
        file_path (str | Path): Path to the required file.

    Returns:
        bool: True if the file exists.

    Raises:
        FileNotFoundError: If the file does not exist or is not a file.
    """
    path = Path(file_path)
    if not path.exists() or not path.is_file():
        logger.error("File not found: %s", path)
        raise FileNotFoundError(f"Required file not found: {path}")

    logger.debug("File exists: %s", path)
    return True


def validate_directory_exists(dir_path: str | Path, create_if_missing: bool = False) -> bool:
    """
    Description:
        Validates that a directory exists, optionally creating it.

    Args:
        dir_path (str | Path): Directory to check.
        create_if_missing (bool): Create the directory (and parents) when absent.

    Returns:
        bool: True if the directory exists (or was created).

    Raises:
        FileNotFoundError: If missing and create_if_missing is False.
    """
    path = Path(dir_path)
    if path.is_dir():
        return True

    if create_if_missing:
        path.mkdir(parents=True, exist_ok=True)
        logger.info("Created directory: %s", path)
        return True

    logger.error("Directory not found: %s", path)
    raise FileNotFoundError(f"Directory not found: {path}")


# ====================================================================================================
# 4. NUMERIC INPUT VALIDATION
# ----------------------------------------------------------------------------------------------------
def validate_finite(values: np.ndarray, label: str = "vector") -> np.ndarray:
    """
    Description:
        Ensures every entry of an array is finite.

    Args:
        values (np.ndarray): Array to check.
        label (str): Name used in the error message.

    Returns:
        np.ndarray: The input as a float64 array.

    Raises:
        DataError: If any entry is NaN or infinite.
    """
    array = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(array)):
        bad = int(np.count_nonzero(~np.isfinite(array)))
        raise DataError(f"{label} contains {bad} non-finite entries")
    return array


def validate_length(values: np.ndarray, expected: int, label: str = "vector") -> None:
    """
    Description:
        Checks a one-dimensional array has the expected length.

    Args:
        values (np.ndarray): Array to check.
        expected (int): Required length.
        label (str): Name used in the error message.

    Returns:
        None.

    Raises:
        DataError: On dimension mismatch.
    """
    if np.ndim(values) != 1 or len(values) != expected:
        raise DataError(f"dimension mismatch: {label} has shape {np.shape(values)}, expected ({expected},)")


def validate_positive(value: float, label: str, allow_zero: bool = False) -> float:
    """
    Description:
        Checks a scalar is finite and strictly positive (or non-negative).

    Args:
        value (float): Scalar to check.
        label (str): Name used in the error message.
        allow_zero (bool): Accept zero as well.

    Returns:
        float: The value as a float.

    Raises:
        UsageError: If the value is out of range.
    """
    number = float(value)
    if not math.isfinite(number) or number < 0 or (number == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise UsageError(f"{label} must be finite and {bound}, got {value!r}")
    return number


def validate_labels(labels: np.ndarray) -> np.ndarray:
    """
    Description:
        Checks classification labels are exactly +1 / -1 and both classes occur.

    Args:
        labels (np.ndarray): Label vector.

    Returns:
        np.ndarray: Labels as float64.

    Raises:
        DataError: On foreign values or a missing class.
    """
    array = np.asarray(labels, dtype=np.float64)
    if not np.all((array == 1.0) | (array == -1.0)):
        raise DataError("labels must be +1 or -1")
    if not np.any(array > 0) or not np.any(array < 0):
        raise DataError("both classes must be present (single-class data)")
    return array


def validate_strictly_decreasing(values: Sequence[float], label: str = "lambdas") -> np.ndarray:
    """
    Description:
        Checks a sequence is non-empty, positive and strictly decreasing.

    Args:
        values (Sequence[float]): Values to check.
        label (str): Name used in the error message.

    Returns:
        np.ndarray: The values as float64.

    Raises:
        UsageError: On an empty, non-positive or non-decreasing sequence.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.ndim != 1 or array.size == 0:
        raise UsageError(f"{label} must be a non-empty list")
    if not np.all(np.isfinite(array)) or np.any(array <= 0):
        raise UsageError(f"{label} must be positive")
    if np.any(np.diff(array) >= 0):
        raise UsageError(f"{label} must be strictly decreasing")
    return array


def validate_index(k: int, upper: int, label: str = "index") -> int:
    """
    Description:
        Checks 0 <= k < upper.

    Args:
        k (int): Index to check.
        upper (int): Exclusive upper bound.
        label (str): Name used in the error message.

    Returns:
        int: The index.

    Raises:
        DataError: If the index is out of range.
    """
    if not 0 <= int(k) < upper:
        raise DataError(f"{label} {k} out of range [0, {upper})")
    return int(k)


# ====================================================================================================
# 5. REPORT STRUCTURE VALIDATION
# ----------------------------------------------------------------------------------------------------
TYPE_CHECKS: Dict[str, Callable[[Any], bool]] = {
    "int": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "string": lambda v: isinstance(v, str),
    "bool": lambda v: isinstance(v, bool),
    "list": lambda v: isinstance(v, list),
    "dict": lambda v: isinstance(v, dict),
}


def load_report_schema(path: Path | None = None) -> Dict[str, Any]:
    """
    Description:
        Loads the checked-in report schema.

    Args:
        path (Path | None): Schema file. Defaults to config/report_schema.yaml.

    Returns:
        Dict[str, Any]: Parsed schema.

    Raises:
        FileNotFoundError: If the schema file is missing.
    """
    schema_path = path or REPORT_SCHEMA_FILE
    validate_file_exists(schema_path)
    with open(schema_path, "r", encoding="utf-8") as fh:
        return yaml.safe_load(fh) or {}


def _check_field(name: str, value: Any, expected: str | List[str]) -> List[str]:
    allowed = [expected] if isinstance(expected, str) else list(expected)
    if value is None and "null" in allowed:
        return []
    if any(TYPE_CHECKS[kind](value) for kind in allowed if kind in TYPE_CHECKS):
        return []
    return [f"field '{name}' has type {type(value).__name__}, expected {'|'.join(allowed)}"]


def validate_report_structure(report: Mapping[str, Any], schema: Mapping[str, Any] | None = None) -> bool:
    """
    Description:
        Validates a report dictionary against the report schema.

    Args:
        report (Mapping[str, Any]): Report document.
        schema (Mapping[str, Any] | None): Parsed schema; loaded from disk when None.

    Returns:
        bool: True when the report conforms.

    Raises:
        DataError: Listing every violation found.

    Notes:
        - Checks the schema version, the required fields common to all commands,
          the command-specific required fields, the declared field types, and
          that every list named under `sorted_lists` is ascending.
    """
    schema = schema or load_report_schema()
    problems: List[str] = []

    version = schema.get("schema_version")
    if report.get("schema") != version:
        problems.append(f"schema version {report.get('schema')!r} != {version!r}")

    fields: Mapping[str, Any] = schema.get("fields", {})
    required = list(schema.get("required", []))
    required += list((schema.get("commands", {}) or {}).get(report.get("command"), []) or [])

    for name in required:
        if name not in report:
            problems.append(f"missing required field '{name}'")

    for name, value in report.items():
        if name in fields:
            problems.extend(_check_field(name, value, fields[name]))

    for name in schema.get("sorted_lists", []):
        values = report.get(name)
        if isinstance(values, list) and any(b < a for a, b in zip(values, values[1:])):
            problems.append(f"field '{name}' is not sorted ascending")

    if problems:
        raise DataError("report schema violation: " + "; ".join(problems))

    return True


# ====================================================================================================
# 6. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging()
    logger.info("C06_validation_utils self-test started.")
    validate_strictly_decreasing([3.0, 2.0, 1.0])
    validate_labels(np.array([1.0, -1.0, 1.0]))
    logger.info("Schema sections: %s", list(load_report_schema().keys()))
    logger.info("C06_validation_utils self-test complete.")
