# ====================================================================================================
# I01_sparse_matrices.py
# ----------------------------------------------------------------------------------------------------
# Column-major sparse feature matrices.
#
# Purpose:
#   - Wrap scipy CSC storage behind an immutable SparseColMatrix whose per-column arrays
#     are sorted, duplicate-free and zero-free.
#   - Provide the implicit mean-centred view CenteredColMatrix (sparse X + dense column means)
#     used by the intercept transform without densifying X.
#   - Expose the two primitives every screening test and solver is built on:
#     mat_vec (X w) and col_dot (x_k^T v).
#
# Usage:
#   from implementation.I01_sparse_matrices import SparseColMatrix, mat_vec, col_dot
#
#   X = SparseColMatrix.from_triplets(rows, cols, values, shape=(m, n))
#   Xw = mat_vec(X, w)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-10
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
from __future__ import annotations

import sys
from pathlib import Path

project_root = str(Path(__file__).resolve().parent.parent)
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

from core.C05_error_handler import DataError
from core.C06_validation_utils import validate_finite, validate_index, validate_length


# ====================================================================================================
# 3. COLUMN OPERATOR PROTOCOL
# ----------------------------------------------------------------------------------------------------
class ColumnOperator(Protocol):
    """Structural interface shared by SparseColMatrix and CenteredColMatrix."""

    @property
    def n_rows(self) -> int: ...

    @property
    def n_cols(self) -> int: ...

    @property
    def col_norms_sq(self) -> np.ndarray: ...

    def col_dot(self, k: int, v: np.ndarray) -> float: ...

    def col_axpy(self, k: int, alpha: float, out: np.ndarray) -> None: ...

    def mat_vec(self, w: np.ndarray) -> np.ndarray: ...

    def rmat_vec(self, v: np.ndarray) -> np.ndarray: ...

    def select_columns(self, indices: np.ndarray) -> "ColumnOperator": ...

    def to_dense(self) -> np.ndarray: ...


# ====================================================================================================
# 4. SPARSE COLUMN MATRIX
# ----------------------------------------------------------------------------------------------------
class SparseColMatrix:
    """
    Description:
        Immutable column-major sparse matrix X in R^{m x n}.

    Args:
        matrix (sp.spmatrix | np.ndarray): Any scipy sparse matrix or dense array.

    Raises:
        DataError: If any stored value is non-finite.

    Notes:
        - Duplicate (row, col) entries are summed, then exact zeros are dropped.
        - Row indices within each column are strictly increasing.
        - The underlying arrays are flagged read-only; instances are safe to share
          across threads.
    """

    def __init__(self, matrix: sp.spmatrix | np.ndarray) -> None:
        csc = sp.csc_matrix(matrix, dtype=np.float64, copy=True)
        csc.sum_duplicates()
        csc.eliminate_zeros()
        csc.sort_indices()
        validate_finite(csc.data, "matrix values")

        for array in (csc.data, csc.indices, csc.indptr):
            array.setflags(write=False)

        self._csc = csc

    # --- Constructors -----------------------------------------------------------------------------
    @classmethod
    def from_triplets(
        cls,
        rows: Sequence[int],
        cols: Sequence[int],
        values: Sequence[float],
        shape: Tuple[int, int],
    ) -> "SparseColMatrix":
        """
        Description:
            Builds a matrix from (row, col, value) triplets.

        Args:
            rows (Sequence[int]): 0-based row indices.
            cols (Sequence[int]): 0-based column indices.
            values (Sequence[float]): Entry values.
            shape (Tuple[int, int]): (m, n).

        Returns:
            SparseColMatrix: The assembled matrix.

        Raises:
            DataError: On mismatched lengths or indices outside the shape.
        """
        rows_arr = np.asarray(rows, dtype=np.int64)
        cols_arr = np.asarray(cols, dtype=np.int64)
        vals_arr = np.asarray(values, dtype=np.float64)

        if not (rows_arr.shape == cols_arr.shape == vals_arr.shape):
            raise DataError("triplet arrays must have equal length")
        m, n = shape
        if rows_arr.size and (rows_arr.min() < 0 or rows_arr.max() >= m or cols_arr.min() < 0 or cols_arr.max() >= n):
            raise DataError(f"triplet index outside matrix shape {shape}")

        return cls(sp.coo_matrix((vals_arr, (rows_arr, cols_arr)), shape=(m, n)))

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "SparseColMatrix":
        dense = np.atleast_2d(np.asarray(array, dtype=np.float64))
        return cls(dense)

    # --- Shape and storage ------------------------------------------------------------------------
    @property
    def n_rows(self) -> int:
        return int(self._csc.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self._csc.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return int(self._csc.nnz)

    @property
    def csc(self) -> sp.csc_matrix:
        """Underlying scipy CSC matrix (read-only arrays)."""
        return self._csc

    def column(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Description:
            Returns the stored (row_indices, values) of column k as read-only views.

        Args:
            k (int): Column index.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Row indices (strictly increasing) and values.

        Raises:
            DataError: If k is out of range.
        """
        validate_index(k, self.n_cols, "column index")
        start, stop = self._csc.indptr[k], self._csc.indptr[k + 1]
        return self._csc.indices[start:stop], self._csc.data[start:stop]

    def dense_column(self, k: int) -> np.ndarray:
        rows, values = self.column(k)
        out = np.zeros(self.n_rows)
        out[rows] = values
        return out

    @cached_property
    def col_norms_sq(self) -> np.ndarray:
        """Squared Euclidean norm of every column."""
        norms = np.asarray(self._csc.multiply(self._csc).sum(axis=0)).ravel()
        norms.setflags(write=False)
        return norms

    @cached_property
    def column_means(self) -> np.ndarray:
        means = np.asarray(self._csc.sum(axis=0)).ravel() / max(self.n_rows, 1)
        means.setflags(write=False)
        return means

    # --- Products ---------------------------------------------------------------------------------
    def col_dot(self, k: int, v: np.ndarray) -> float:
        """x_k^T v, visiting only the stored entries of column k."""
        rows, values = self.column(k)
        return float(values @ v[rows]) if rows.size else 0.0

    def col_axpy(self, k: int, alpha: float, out: np.ndarray) -> None:
        """out += alpha * x_k, in place."""
        start, stop = self._csc.indptr[k], self._csc.indptr[k + 1]
        out[self._csc.indices[start:stop]] += alpha * self._csc.data[start:stop]

    def mat_vec(self, w: np.ndarray) -> np.ndarray:
        return np.asarray(self._csc @ np.asarray(w, dtype=np.float64)).ravel()

    def rmat_vec(self, v: np.ndarray) -> np.ndarray:
        """X^T v."""
        return np.asarray(self._csc.T @ np.asarray(v, dtype=np.float64)).ravel()

    # --- Derived matrices -------------------------------------------------------------------------
    def select_columns(self, indices: np.ndarray) -> "SparseColMatrix":
        return SparseColMatrix(self._csc[:, np.asarray(indices, dtype=np.int64)])

    def scale_rows(self, factors: np.ndarray) -> "SparseColMatrix":
        """diag(factors) X, e.g. the screening columns y * z_k of a classification problem."""
        return SparseColMatrix(sp.diags(np.asarray(factors, dtype=np.float64)) @ self._csc)

    def append_rows(self, block: sp.spmatrix) -> "SparseColMatrix":
        return SparseColMatrix(sp.vstack([self._csc, block], format="csc"))

    def to_dense(self) -> np.ndarray:
        return self._csc.toarray()

    def __repr__(self) -> str:
        return f"SparseColMatrix(shape={self.shape}, nnz={self.nnz})"


# ====================================================================================================
# 5. IMPLICITLY CENTRED MATRIX
# ----------------------------------------------------------------------------------------------------
class CenteredColMatrix:
    """
    Description:
        The matrix X - 1 mean^T represented as (sparse X, dense column means).

    Args:
        base (SparseColMatrix): Uncentred sparse matrix.
        means (np.ndarray | None): Column means; computed from base when None.

    Notes:
        - Column k is the implicit vector x_k - mean_k * 1; nothing is densified
          unless to_dense() is called.
    """

    def __init__(self, base: SparseColMatrix, means: np.ndarray | None = None) -> None:
        self.base = base
        means_arr = np.array(base.column_means if means is None else means, dtype=np.float64)
        validate_length(means_arr, base.n_cols, "column means")
        means_arr.setflags(write=False)
        self.means = means_arr

    @property
    def n_rows(self) -> int:
        return self.base.n_rows

    @property
    def n_cols(self) -> int:
        return self.base.n_cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.base.shape

    @cached_property
    def col_norms_sq(self) -> np.ndarray:
        # sum (x_i - mu)^2 = sum x_i^2 - m mu^2
        norms = np.maximum(self.base.col_norms_sq - self.n_rows * self.means ** 2, 0.0)
        norms.setflags(write=False)
        return norms

    @cached_property
    def column_means(self) -> np.ndarray:
        return np.zeros(self.n_cols)

    def column(self, k: int) -> np.ndarray:
        """Dense copy of the centred column k."""
        return self.base.dense_column(k) - self.means[k]

    def dense_column(self, k: int) -> np.ndarray:
        return self.column(k)

    def col_dot(self, k: int, v: np.ndarray) -> float:
        return self.base.col_dot(k, v) - self.means[k] * float(np.sum(v))

    def col_axpy(self, k: int, alpha: float, out: np.ndarray) -> None:
        self.base.col_axpy(k, alpha, out)
        out -= alpha * self.means[k]

    def mat_vec(self, w: np.ndarray) -> np.ndarray:
        w_arr = np.asarray(w, dtype=np.float64)
        return self.base.mat_vec(w_arr) - float(self.means @ w_arr)

    def rmat_vec(self, v: np.ndarray) -> np.ndarray:
        v_arr = np.asarray(v, dtype=np.float64)
        return self.base.rmat_vec(v_arr) - self.means * float(np.sum(v_arr))

    def select_columns(self, indices: np.ndarray) -> "CenteredColMatrix":
        idx = np.asarray(indices, dtype=np.int64)
        return CenteredColMatrix(self.base.select_columns(idx), self.means[idx])

    def to_dense(self) -> np.ndarray:
        return self.base.to_dense() - self.means[np.newaxis, :]

    def __repr__(self) -> str:
        return f"CenteredColMatrix(shape={self.shape}, nnz={self.base.nnz})"


# ====================================================================================================
# 6. CHECKED PRIMITIVES
# ----------------------------------------------------------------------------------------------------
def mat_vec(X: ColumnOperator, w: np.ndarray) -> np.ndarray:
    """
    Description:
        Computes X w.

    Args:
        X (ColumnOperator): Feature matrix (m x n).
        w (np.ndarray): Vector of length n.

    Returns:
        np.ndarray: X w, length m.

    Raises:
        DataError: On dimension mismatch.
    """
    w_arr = np.asarray(w, dtype=np.float64)
    validate_length(w_arr, X.n_cols, "w")
    return X.mat_vec(w_arr)


def col_dot(X: ColumnOperator, k: int, v: np.ndarray) -> float:
    """
    Description:
        Computes x_k^T v.

    Args:
        X (ColumnOperator): Feature matrix (m x n).
        k (int): Column index, 0 <= k < n.
        v (np.ndarray): Vector of length m.

    Returns:
        float: The inner product (0 for an empty column).

    Raises:
        DataError: If k is out of range or v has the wrong length.
    """
    validate_index(k, X.n_cols, "column index")
    v_arr = np.asarray(v, dtype=np.float64)
    validate_length(v_arr, X.n_rows, "v")
    return X.col_dot(k, v_arr)


def as_column_operator(X: ColumnOperator | sp.spmatrix | np.ndarray) -> ColumnOperator:
    """Wraps raw scipy / numpy input; SparseColMatrix and CenteredColMatrix pass through."""
    if isinstance(X, (SparseColMatrix, CenteredColMatrix)):
        return X
    return SparseColMatrix(X)
