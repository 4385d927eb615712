# ====================================================================================================
# IO01_dataset_loaders.py
# ----------------------------------------------------------------------------------------------------
# Dataset ingestion and generation.
#
# Purpose:
#   - Read svmlight / libsvm text files into a column-major SparseColMatrix plus targets.
#   - Write svmlight files with bit-exact float formatting.
#   - Read dense CSV files (first column target, remaining columns features) through pandas.
#   - Generate seeded synthetic LASSO and classification data.
#
# Usage:
#   from implementation.data_io.IO01_dataset_loaders import load_dataset, to_labels
#
#   X, targets = load_dataset(Path("data/train.svm"))
#   labels, remapped = to_labels(targets)
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

from core.C05_error_handler import DataError, UsageError
from core.C06_validation_utils import validate_directory_exists, validate_file_exists
from core.C09_io_utils import read_csv_file

from implementation.I01_sparse_matrices import SparseColMatrix
from implementation.I02_problem_instances import LassoInstance, LogRegInstance, SvmInstance


# ====================================================================================================
# 3. CONSTANTS
# ----------------------------------------------------------------------------------------------------
DATASET_FORMATS: Tuple[str, ...] = ("svmlight", "csv")

# Suffixes read as dense CSV when no format is given; everything else is svmlight.
CSV_SUFFIXES: Tuple[str, ...] = (".csv",)


# ====================================================================================================
# 4. SVMLIGHT FORMAT
# ----------------------------------------------------------------------------------------------------
def _parse_svmlight_line(text: str, line_no: int, path: Path) -> Tuple[float, List[int], List[float]] | None:
    """Parses one line; returns None for blank / comment-only lines."""
    content = text.split("#", 1)[0].strip()
    if not content:
        return None

    tokens = content.split()
    try:
        target = float(tokens[0])
    except ValueError as exc:
        raise DataError(f"{path.name}:{line_no}: malformed target {tokens[0]!r}") from exc

    cols: List[int] = []
    vals: List[float] = []
    for token in tokens[1:]:
        key, sep, value = token.partition(":")
        if not sep:
            raise DataError(f"{path.name}:{line_no}: malformed token {token!r}")
        if key == "qid":
            continue
        try:
            index, number = int(key), float(value)
        except ValueError as exc:
            raise DataError(f"{path.name}:{line_no}: malformed token {token!r}") from exc
        if index < 1:
            raise DataError(f"{path.name}:{line_no}: feature index {index} must be >= 1")
        if not math.isfinite(number):
            raise DataError(f"{path.name}:{line_no}: non-finite value in {token!r}")
        cols.append(index - 1)
        vals.append(number)
    return target, cols, vals


def load_svmlight(file_path: str | Path, n_features: int | None = None) -> Tuple[SparseColMatrix, np.ndarray]:
    """
    Description:
        Reads a `target idx:val idx:val ...` file into a column-major matrix.

    Args:
        file_path (str | Path): svmlight / libsvm text file.
        n_features (int | None): Column count to enforce; the largest index seen when None.

    Returns:
        Tuple[SparseColMatrix, np.ndarray]: (X, targets) with m rows.

    Raises:
        FileNotFoundError: If the file does not exist.
        DataError: On a malformed token (with its line number), an index beyond
            n_features, or a file with no samples.

    Notes:
        - Indices are 1-based on disk and 0-based in memory.
        - Everything after '#' on a line is a comment; `qid:` tokens are ignored.
        - Duplicate indices within a line are summed; indices need not be increasing.
    """
    path = Path(file_path)
    validate_file_exists(path)

    rows: List[int] = []
    cols: List[int] = []
    vals: List[float] = []
    targets: List[float] = []

    with open(path, "r", encoding="utf-8") as fh:
        for line_no, text in enumerate(fh, start=1):
            parsed = _parse_svmlight_line(text, line_no, path)
            if parsed is None:
                continue
            target, line_cols, line_vals = parsed
            rows.extend([len(targets)] * len(line_cols))
            cols.extend(line_cols)
            vals.extend(line_vals)
            targets.append(target)

    if not targets:
        raise DataError(f"{path.name}: no samples")

    widest = max(cols) + 1 if cols else 0
    if n_features is None:
        n_features = widest
    elif widest > n_features:
        raise DataError(f"{path.name}: feature index {widest} exceeds n_features={n_features}")

    X = SparseColMatrix.from_triplets(rows, cols, vals, (len(targets), int(n_features)))
    logger.info("Loaded svmlight: %s (%s samples, %s features, %s nonzeros)", path, X.n_rows, X.n_cols, X.nnz)
    return X, np.asarray(targets, dtype=np.float64)


def write_svmlight(file_path: str | Path, X: SparseColMatrix, targets: np.ndarray) -> Path:
    """
    Description:
        Writes X and targets in svmlight format, one row per line.

    Args:
        file_path (str | Path): Output file; parent folders are created.
        X (SparseColMatrix): Data matrix.
        targets (np.ndarray): One target per row.

    Returns:
        Path: The written file.

    Notes:
        - Floats are written with repr(), so load_svmlight() reads back identical bits.
    """
    path = Path(file_path)
    validate_directory_exists(path.parent, create_if_missing=True)
    targets = np.asarray(targets, dtype=np.float64)
    if targets.size != X.n_rows:
        raise DataError(f"targets has length {targets.size}, expected {X.n_rows}")

    csr = X.csc.tocsr()
    csr.sort_indices()
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(X.n_rows):
            start, end = csr.indptr[i], csr.indptr[i + 1]
            entries = " ".join(f"{int(j) + 1}:{float(v)!r}" for j, v in zip(csr.indices[start:end], csr.data[start:end]))
            fh.write(f"{float(targets[i])!r} {entries}".rstrip() + "\n")

    logger.info("svmlight saved: %s (%s samples, %s features)", path, X.n_rows, X.n_cols)
    return path


# ====================================================================================================
# 5. DENSE CSV FORMAT
# ----------------------------------------------------------------------------------------------------
def load_csv_dense(file_path: str | Path, header: bool = False) -> Tuple[SparseColMatrix, np.ndarray]:
    """
    Description:
        Reads a dense CSV whose first column is the target and whose remaining
        columns are features.

    Args:
        file_path (str | Path): CSV file.
        header (bool): True when the first line holds column names.

    Returns:
        Tuple[SparseColMatrix, np.ndarray]: (X, targets).

    Raises:
        FileNotFoundError: If the file does not exist.
        DataError: On non-numeric cells, missing values or fewer than two columns.
    """
    path = Path(file_path)
    try:
        df = read_csv_file(path, header=0 if header else None, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise DataError(f"{path.name}: {exc}") from exc

    if df.empty:
        raise DataError(f"{path.name}: no samples")
    if df.shape[1] < 2:
        raise DataError(f"{path.name}: need a target column and at least one feature column")

    try:
        values = df.apply(pd.to_numeric, errors="raise").to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise DataError(f"{path.name}: non-numeric cell ({exc})") from exc
    if not np.all(np.isfinite(values)):
        bad_row = int(np.flatnonzero(~np.all(np.isfinite(values), axis=1))[0])
        raise DataError(f"{path.name}: missing or non-finite value in data row {bad_row + 1}")

    return SparseColMatrix.from_dense(values[:, 1:]), values[:, 0].copy()


def load_dataset(
    file_path: str | Path,
    fmt: str | None = None,
    header: bool = False,
    n_features: int | None = None,
) -> Tuple[SparseColMatrix, np.ndarray]:
    """
    Description:
        Reads a dataset in either supported format.

    Args:
        file_path (str | Path): Input file.
        fmt (str | None): "svmlight" or "csv"; inferred from the suffix when None.
        header (bool): CSV header flag.
        n_features (int | None): svmlight column count.

    Returns:
        Tuple[SparseColMatrix, np.ndarray]: (X, targets).

    Raises:
        UsageError: On an unknown format.
    """
    path = Path(file_path)
    if fmt is None:
        fmt = "csv" if path.name.lower().endswith(CSV_SUFFIXES) else "svmlight"
    if fmt not in DATASET_FORMATS:
        raise UsageError(f"unknown data format {fmt!r}; expected one of {', '.join(DATASET_FORMATS)}")
    if fmt == "csv":
        return load_csv_dense(path, header=header)
    return load_svmlight(path, n_features=n_features)


def to_labels(targets: np.ndarray) -> Tuple[np.ndarray, bool]:
    """
    Description:
        Maps targets to class labels: values <= 0 become -1, values > 0 become +1.

    Returns:
        Tuple[np.ndarray, bool]: (labels, remapped) where remapped is True when any
        target was not already -1 or +1.
    """
    values = np.asarray(targets, dtype=np.float64)
    labels = np.where(values > 0.0, 1.0, -1.0)
    remapped = bool(np.any(labels != values))
    if remapped:
        logger.info("Targets remapped to +/-1 labels (%s positive, %s negative)", int((labels > 0).sum()), int((labels < 0).sum()))
    return labels, remapped


# ====================================================================================================
# 6. SYNTHETIC DATA
# ----------------------------------------------------------------------------------------------------
def _random_design(m: int, n: int, density: float, rng: np.random.Generator) -> SparseColMatrix:
    if m < 1 or n < 1:
        raise UsageError(f"synthetic data needs m >= 1 and n >= 1, got ({m}, {n})")
    if not 0.0 < density <= 1.0:
        raise UsageError(f"density must be in (0, 1], got {density}")
    matrix = sp.random(m, n, density=density, format="csc", random_state=rng, data_rvs=rng.standard_normal)
    return SparseColMatrix(matrix)


def _sparse_truth(n: int, nnz_true: int, rng: np.random.Generator) -> np.ndarray:
    omega = np.zeros(n)
    support = rng.choice(n, size=min(max(int(nnz_true), 0), n), replace=False)
    omega[support] = rng.standard_normal(support.size)
    return omega


def make_synthetic_lasso(
    m: int,
    n: int,
    density: float = 0.1,
    nnz_true: int = 10,
    noise: float = 0.1,
    seed: int = 42,
) -> Tuple[LassoInstance, np.ndarray]:
    """
    Description:
        Sparse Gaussian design with a sparse ground truth: y = X omega + noise * eta.

    Args:
        m (int): Samples.
        n (int): Features.
        density (float): Fraction of stored entries in X.
        nnz_true (int): Nonzeros in omega.
        noise (float): Standard deviation of the additive noise.
        seed (int): numpy Generator seed.

    Returns:
        Tuple[LassoInstance, np.ndarray]: (instance, omega).
    """
    rng = np.random.default_rng(seed)
    X = _random_design(m, n, density, rng)
    omega = _sparse_truth(n, nnz_true, rng)
    y = X.mat_vec(omega) + noise * rng.standard_normal(m)
    logger.debug("Synthetic LASSO data: m=%s n=%s nnz=%s seed=%s", m, n, X.nnz, seed)
    return LassoInstance(X, y), omega


def make_synthetic_classification(
    m: int,
    n: int,
    density: float = 0.1,
    nnz_true: int = 10,
    noise: float = 0.1,
    seed: int = 42,
    task: Literal["svm", "logreg"] = "svm",
) -> SvmInstance | LogRegInstance:
    """
    Description:
        Labels from a thresholded noisy linear score; the threshold is the median score
        so both classes are present.

    Returns:
        SvmInstance | LogRegInstance: Depending on task.

    Raises:
        UsageError: If m < 2 or task is unknown.
    """
    if task not in ("svm", "logreg"):
        raise UsageError(f"task must be 'svm' or 'logreg', got {task!r}")
    if m < 2:
        raise UsageError("classification data needs at least two samples")

    rng = np.random.default_rng(seed)
    Z = _random_design(m, n, density, rng)
    omega = _sparse_truth(n, nnz_true, rng)
    score = Z.mat_vec(omega) + noise * rng.standard_normal(m)
    labels = np.where(score > np.median(score), 1.0, -1.0)
    if np.all(labels == labels[0]):
        labels = np.where(np.arange(m) % 2 == 0, 1.0, -1.0)

    cls = SvmInstance if task == "svm" else LogRegInstance
    return cls(Z, labels)
