# ====================================================================================================
# IO02_report_writer.py
# ----------------------------------------------------------------------------------------------------
# JSON reports and solution files for the command-line surface.
#
# Purpose:
#   - Assemble a schema-versioned report dictionary (command, data, sizes, seed, config echo,
#     timings, command-specific fields) with numpy values converted to plain JSON types.
#   - Validate against config/report_schema.yaml before writing.
#   - Read solution / warm-start files written by earlier runs.
#   - Write bench tables as CSV next to the JSON report.
#
# Usage:
#   from implementation.data_io.IO02_report_writer import build_report, write_report
#
#   report = build_report("screen", data_path, n=X.n_cols, m=X.n_rows, **report.to_dict())
#   write_report(report, Path("outputs/screen.json"))
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-18
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
from __future__ import annotations

import sys
from pathlib import Path

project_root = str(Path(__file__).resolve().parent.parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

if "" in sys.path:
    sys.path.remove("")

sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

from core.C03_logging_handler import get_logger
logger = get_logger(__name__)

from core.C04_config_loader import config_snapshot, get_config
from core.C05_error_handler import DataError
from core.C06_validation_utils import validate_report_structure
from core.C09_io_utils import read_json, save_dataframe, save_json


# ====================================================================================================
# 3. CONSTANTS
# ----------------------------------------------------------------------------------------------------
SCHEMA_VERSION: int = 1
DEFAULT_SEED: int = 42

# Report fields that depend on wall-clock time; everything else is reproducible.
TIMING_FIELDS: Tuple[str, ...] = ("timings", "seconds")


# ====================================================================================================
# 4. JSON CONVERSION
# ----------------------------------------------------------------------------------------------------
def to_jsonable(value: Any) -> Any:
    """
    Description:
        Recursively converts numpy scalars / arrays, tuples and paths into JSON types.

    Notes:
        - Non-finite floats become None; save_json() refuses NaN and infinity.
    """
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    return value


def sparse_solution(w: np.ndarray) -> List[List[Any]]:
    """Nonzero entries of w as ascending [index, value] pairs."""
    w_arr = np.asarray(w, dtype=np.float64)
    support = np.flatnonzero(w_arr)
    return [[int(k), float(w_arr[k])] for k in support]


def dense_solution(pairs: Sequence[Sequence[Any]], n: int) -> np.ndarray:
    """
    Description:
        Inverse of sparse_solution().

    Raises:
        DataError: On a malformed pair or an index outside 0..n-1.
    """
    w = np.zeros(n)
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DataError(f"solution entries must be [index, value] pairs, got {pair!r}")
        index, value = int(pair[0]), float(pair[1])
        if not 0 <= index < n:
            raise DataError(f"solution index {index} outside 0..{n - 1}")
        w[index] += value
    return w


# ====================================================================================================
# 5. REPORTS
# ----------------------------------------------------------------------------------------------------
def build_report(
    command: str,
    data: str | Path,
    n: int,
    m: int,
    seed: int | None = None,
    timings: Mapping[str, float] | None = None,
    **fields: Any,
) -> Dict[str, Any]:
    """
    Description:
        Assembles a report with the common header and the command-specific fields.

    Args:
        command (str): CLI subcommand.
        data (str | Path): Input data file.
        n (int): Number of features.
        m (int): Number of samples.
        seed (int | None): Seed recorded in the report; `cli.seed` when None.
        timings (Mapping[str, float] | None): Named wall-clock durations in seconds.
        **fields: Command-specific entries.

    Returns:
        Dict[str, Any]: JSON-ready report.
    """
    report: Dict[str, Any] = {
        "schema": int(get_config("cli", "schema_version", default=SCHEMA_VERSION)),
        "command": command,
        "data": str(data),
        "n": int(n),
        "m": int(m),
        "seed": int(get_config("cli", "seed", default=DEFAULT_SEED) if seed is None else seed),
        "config": config_snapshot(),
        "timings": dict(timings or {}),
    }
    report.update(fields)
    return to_jsonable(report)


def write_report(report: Mapping[str, Any], file_path: str | Path, schema: Mapping[str, Any] | None = None) -> Path:
    """
    Description:
        Validates a report against the checked-in schema and writes it as UTF-8 JSON.

    Raises:
        DataError: If the report violates the schema; nothing is written.
    """
    payload = to_jsonable(report)
    validate_report_structure(payload, schema)
    return save_json(payload, file_path)


def strip_timings(report: Mapping[str, Any]) -> Any:
    """Copy of a report with every wall-clock field removed, for reproducibility comparisons."""
    if isinstance(report, Mapping):
        return {key: strip_timings(value) for key, value in report.items() if key not in TIMING_FIELDS}
    if isinstance(report, list):
        return [strip_timings(item) for item in report]
    return report


def write_bench_table(rows: Sequence[Mapping[str, Any]], json_path: str | Path) -> Path:
    """Writes the bench rows as a CSV with the same stem as the JSON report."""
    csv_path = Path(json_path).with_suffix(".csv")
    return save_dataframe(pd.DataFrame(list(rows)), csv_path)


# ====================================================================================================
# 6. SOLUTION FILES
# ----------------------------------------------------------------------------------------------------
def read_solution(file_path: str | Path, n: int) -> Tuple[np.ndarray, float | None]:
    """
    Description:
        Reads a primal vector from a JSON file.

    Args:
        file_path (str | Path): JSON with either "solution" as [index, value] pairs
            or "w" as a dense list; an optional "lambda" records where it was solved.
        n (int): Expected number of features.

    Returns:
        Tuple[np.ndarray, float | None]: (w, lambda) with lambda None when absent.

    Raises:
        DataError: On a missing or malformed vector.

    Notes:
        - A path report is accepted too; its last record is used.
    """
    document = read_json(file_path)
    if not isinstance(document, Mapping):
        raise DataError(f"{Path(file_path).name}: expected a JSON object")
    if "records" in document and document["records"]:
        document = document["records"][-1]

    if "solution" in document:
        w = dense_solution(document["solution"], n)
    elif "w" in document:
        w = np.asarray(document["w"], dtype=np.float64)
        if w.shape != (n,):
            raise DataError(f"{Path(file_path).name}: 'w' has length {w.size}, expected {n}")
    else:
        raise DataError(f"{Path(file_path).name}: no 'solution' or 'w' entry")

    if not np.all(np.isfinite(w)):
        raise DataError(f"{Path(file_path).name}: solution has non-finite entries")
    lam = document.get("lambda")
    return w, (float(lam) if lam is not None else None)
