# ====================================================================================================
# I02_problem_instances.py
# ----------------------------------------------------------------------------------------------------
# Shared problem/report data model used by screening, solvers, workflows and the CLI.
#
# Purpose:
#   - Define the immutable problem instances (LASSO, SVM, logistic regression).
#   - Define WarmStart, ScreeningReport, SolveOptions and SolverResult with their invariants.
#   - Provide the intercept (centering) and elastic-net transforms that reduce LASSO
#     variants to the plain problem.
#
# Usage:
#   from implementation.I02_problem_instances import (
#       LassoInstance,
#       LassoVariant,
#       WarmStart,
#       center,
#       elasticize,
#   )
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

from core.C05_error_handler import DataError, UsageError
from core.C06_validation_utils import validate_finite, validate_labels, validate_length, validate_positive

from implementation.I01_sparse_matrices import (
    CenteredColMatrix,
    ColumnOperator,
    SparseColMatrix,
    as_column_operator,
)
from implementation.I03_numeric_constants import setting


def _frozen_array(values: np.ndarray | Sequence[float], dtype: Any = np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


# ====================================================================================================
# 3. LASSO INSTANCES AND TRANSFORMS
# ----------------------------------------------------------------------------------------------------
class LassoVariant(str, Enum):
    PLAIN = "plain"
    INTERCEPT = "intercept"
    ELASTIC = "elastic"


@dataclass(frozen=True)
class LassoInstance:
    """
    Description:
        min_w 1/2 ||X w - y||^2 + lambda ||w||_1, optionally with an intercept or an
        elastic-net term 1/2 epsilon ||w||^2.

    Args:
        X (ColumnOperator): Feature matrix (m x n).
        y (np.ndarray): Response, length m.
        variant (LassoVariant): plain / intercept / elastic.
        epsilon (float): Elastic-net weight, >= 0 (used only by the elastic variant).

    Raises:
        DataError: On non-finite data or dimension mismatch.
        UsageError: If epsilon < 0.
    """

    X: ColumnOperator
    y: np.ndarray
    variant: LassoVariant = LassoVariant.PLAIN
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "X", as_column_operator(self.X))
        y = validate_finite(self.y, "y")
        validate_length(y, self.X.n_rows, "y")
        object.__setattr__(self, "y", _frozen_array(y))
        object.__setattr__(self, "variant", LassoVariant(self.variant))
        if self.variant is LassoVariant.ELASTIC:
            validate_positive(self.epsilon, "epsilon", allow_zero=True)

    @property
    def n_rows(self) -> int:
        return self.X.n_rows

    @property
    def n_features(self) -> int:
        return self.X.n_cols

    @cached_property
    def norm_y_sq(self) -> float:
        return float(self.y @ self.y)

    def objective(self, w: np.ndarray, lam: float) -> float:
        """Plain LASSO objective 1/2 ||X w - y||^2 + lambda ||w||_1."""
        residual = self.X.mat_vec(w) - self.y
        return 0.5 * float(residual @ residual) + lam * float(np.abs(w).sum())


def center(instance: LassoInstance) -> LassoInstance:
    """
    Description:
        Reduces the intercept problem to a plain LASSO on centred data.

    Args:
        instance (LassoInstance): Intercept-variant instance with a SparseColMatrix.

    Returns:
        LassoInstance: Plain instance with X_cent = X - 1 xbar^T (kept implicit) and
        y_cent = y - ybar.

    Raises:
        UsageError: If the instance is not the intercept variant.

    Notes:
        - Reconstitute the intercept with intercept_from_centered().
    """
    if instance.variant is not LassoVariant.INTERCEPT:
        raise UsageError(f"center() requires the intercept variant, got {instance.variant.value}")
    if not isinstance(instance.X, SparseColMatrix):
        raise UsageError("center() requires an uncentred SparseColMatrix")

    X_cent = CenteredColMatrix(instance.X)
    y_cent = instance.y - float(np.mean(instance.y))
    logger.debug("Centred %s features (ybar=%.6g)", instance.n_features, float(np.mean(instance.y)))
    return LassoInstance(X_cent, y_cent, LassoVariant.PLAIN)


def intercept_from_centered(instance: LassoInstance, w: np.ndarray) -> float:
    """
    Description:
        Optimal intercept nu = ybar - xbar^T w for the original (uncentred) data.

    Args:
        instance (LassoInstance): The original intercept-variant instance.
        w (np.ndarray): Solution of the centred problem.

    Returns:
        float: The intercept.
    """
    return float(np.mean(instance.y) - instance.X.column_means @ np.asarray(w, dtype=np.float64))


def elasticize(instance: LassoInstance) -> LassoInstance:
    """
    Description:
        Reduces the elastic-net problem to a plain LASSO by stacking sqrt(eps) I under X
        and zeros under y.

    Args:
        instance (LassoInstance): Elastic-variant instance with epsilon > 0.

    Returns:
        LassoInstance: Plain instance with m + n rows.

    Raises:
        UsageError: If the variant is not elastic or epsilon <= 0.
    """
    if instance.variant is not LassoVariant.ELASTIC:
        raise UsageError(f"elasticize() requires the elastic variant, got {instance.variant.value}")
    validate_positive(instance.epsilon, "epsilon")
    if not isinstance(instance.X, SparseColMatrix):
        raise UsageError("elasticize() requires a SparseColMatrix")

    n = instance.n_features
    ridge_block = sp.identity(n, format="csc") * math.sqrt(instance.epsilon)
    X_el = instance.X.append_rows(ridge_block)
    y_el = np.concatenate([instance.y, np.zeros(n)])
    return LassoInstance(X_el, y_el, LassoVariant.PLAIN)


def to_plain(instance: LassoInstance) -> LassoInstance:
    """Applies the transform matching the instance variant (identity for plain)."""
    if instance.variant is LassoVariant.INTERCEPT:
        return center(instance)
    if instance.variant is LassoVariant.ELASTIC:
        return elasticize(instance)
    return instance


# ====================================================================================================
# 4. CLASSIFICATION INSTANCES
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ClassificationInstance:
    """
    Description:
        Data points z_i (rows of Z) with labels y_i in {-1, +1}; both classes present.

    Args:
        Z (SparseColMatrix): Data matrix (m x n).
        labels (np.ndarray): Labels, length m.

    Raises:
        DataError: On foreign labels, a missing class or dimension mismatch.
    """

    Z: SparseColMatrix
    labels: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "Z", as_column_operator(self.Z))
        labels = validate_labels(self.labels)
        validate_length(labels, self.Z.n_rows, "labels")
        object.__setattr__(self, "labels", _frozen_array(labels))

    @property
    def n_rows(self) -> int:
        return self.Z.n_rows

    @property
    def n_features(self) -> int:
        return self.Z.n_cols

    @cached_property
    def m_plus(self) -> int:
        return int(np.count_nonzero(self.labels > 0))

    @cached_property
    def m_minus(self) -> int:
        return int(np.count_nonzero(self.labels < 0))

    @cached_property
    def screening_matrix(self) -> SparseColMatrix:
        """Columns x_k with (x_k)_i = y_i z_i(k)."""
        return self.Z.scale_rows(self.labels)

    @cached_property
    def plus_rows(self) -> np.ndarray:
        return np.flatnonzero(self.labels > 0)

    @cached_property
    def minus_rows(self) -> np.ndarray:
        return np.flatnonzero(self.labels < 0)


@dataclass(frozen=True)
class SvmInstance(ClassificationInstance):
    """Sparse hinge-loss classification data; gamma_max = 2 min(m_plus, m_minus)."""

    @cached_property
    def m_under(self) -> int:
        return min(self.m_plus, self.m_minus)

    @cached_property
    def gamma_max(self) -> float:
        return 2.0 * self.m_under


@dataclass(frozen=True)
class LogRegInstance(ClassificationInstance):
    """Sparse logistic regression data."""


# ====================================================================================================
# 5. WARM START
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class WarmStart:
    """
    Description:
        A solved (lambda0, w0, theta0) triple powering the dual-scaling bound.

    Args:
        lambda0 (float): Penalty at which w0 was obtained, > 0.
        w0 (np.ndarray): Primal vector, length n.
        theta0 (np.ndarray): Dual point X w0 - y, length m.

    Notes:
        - Build through WarmStart.default(), WarmStart.from_solution() or
          WarmStart.build(); each checks theta0 = X w0 - y and dual feasibility
          lambda0 >= ||X^T theta0||_inf (relative tolerance `screening.warm_start_tol`).
    """

    lambda0: float
    w0: np.ndarray
    theta0: np.ndarray

    @classmethod
    def build(
        cls,
        instance: LassoInstance,
        lambda0: float,
        w0: np.ndarray,
        theta0: np.ndarray | None = None,
    ) -> "WarmStart":
        """
        Description:
            Validating constructor.

        Args:
            instance (LassoInstance): Plain LASSO instance the warm start belongs to.
            lambda0 (float): Penalty of the prior solve.
            w0 (np.ndarray): Prior solution.
            theta0 (np.ndarray | None): Dual point; computed as X w0 - y when None.

        Returns:
            WarmStart: A checked warm start.

        Raises:
            DataError: On dimension mismatch, theta0 inconsistency or dual infeasibility.
        """
        tol = float(setting("screening", "warm_start_tol"))
        lambda0 = validate_positive(lambda0, "lambda0")
        w = validate_finite(w0, "w0")
        validate_length(w, instance.n_features, "w0")

        expected = instance.X.mat_vec(w) - instance.y
        if theta0 is None:
            theta = expected
        else:
            theta = validate_finite(theta0, "theta0")
            validate_length(theta, instance.n_rows, "theta0")
            scale = max(1.0, float(np.linalg.norm(instance.y)))
            if float(np.linalg.norm(theta - expected)) > tol * scale:
                raise DataError("warm start inconsistent: theta0 != X w0 - y")

        dual_norm = float(np.max(np.abs(instance.X.rmat_vec(theta)))) if instance.n_features else 0.0
        if dual_norm > lambda0 * (1.0 + tol):
            raise DataError(
                f"warm start not dual feasible: ||X^T theta0||_inf = {dual_norm:.12g} > lambda0 = {lambda0:.12g}"
            )

        return cls(lambda0, _frozen_array(w), _frozen_array(theta))

    @classmethod
    def default(cls, instance: LassoInstance) -> "WarmStart":
        """(lambda_max, 0, -y): the solution at lambda_max is w = 0."""
        lam_max = float(np.max(np.abs(instance.X.rmat_vec(instance.y)))) if instance.n_features else 0.0
        lam_max = lam_max if lam_max > 0 else 1.0
        return cls.build(instance, lam_max, np.zeros(instance.n_features))

    @classmethod
    def from_solution(cls, instance: LassoInstance, lambda0: float, w0: np.ndarray) -> "WarmStart":
        """
        Description:
            Warm start from an (inexact) solution; lambda0 is lifted to ||X^T theta0||_inf
            when the solve left theta0 slightly outside the dual box.

        Args:
            instance (LassoInstance): Plain LASSO instance.
            lambda0 (float): Penalty at which w0 was computed.
            w0 (np.ndarray): Solution vector.

        Returns:
            WarmStart: A dual-feasible warm start.
        """
        w = np.asarray(w0, dtype=np.float64)
        theta = instance.X.mat_vec(w) - instance.y
        dual_norm = float(np.max(np.abs(instance.X.rmat_vec(theta)))) if instance.n_features else 0.0
        lifted = max(float(lambda0), dual_norm)
        if lifted > lambda0:
            logger.debug("Warm start lambda0 lifted from %.12g to %.12g", lambda0, lifted)
        return cls.build(instance, lifted, w, theta)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.w0)


# ====================================================================================================
# 6. SCREENING REPORT
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ScreeningReport:
    """
    Description:
        Outcome of one screening pass.

    Args:
        lam (float): Penalty the report applies to.
        eliminated (np.ndarray): Sorted indices certified zero at the optimum.
        kept (np.ndarray): Sorted complement of eliminated.
        gamma_used (float): Lower bound on the optimal value used by the test.
        certificates (np.ndarray | None): max(P(gamma, x_k), P(gamma, -x_k)) per feature.

    Raises:
        DataError: If the index sets do not partition 0..n-1, or an eliminated
            feature carries a certificate >= lam.
    """

    lam: float
    eliminated: np.ndarray
    kept: np.ndarray
    gamma_used: float
    certificates: np.ndarray | None = None

    def __post_init__(self) -> None:
        eliminated = _frozen_array(np.sort(np.asarray(self.eliminated, dtype=np.int64)), np.int64)
        kept = _frozen_array(np.sort(np.asarray(self.kept, dtype=np.int64)), np.int64)
        n = eliminated.size + kept.size
        union = np.concatenate([eliminated, kept])
        if union.size and not np.array_equal(np.sort(union), np.arange(n)):
            raise DataError("eliminated and kept must partition the feature indices")
        object.__setattr__(self, "eliminated", eliminated)
        object.__setattr__(self, "kept", kept)

        if self.certificates is not None:
            certs = _frozen_array(self.certificates)
            validate_length(certs, n, "certificates")
            if eliminated.size and np.any(certs[eliminated] >= self.lam):
                raise DataError("an eliminated feature has certificate >= lambda")
            object.__setattr__(self, "certificates", certs)

    @property
    def n_features(self) -> int:
        return int(self.eliminated.size + self.kept.size)

    @property
    def eliminated_count(self) -> int:
        return int(self.eliminated.size)

    @property
    def kept_count(self) -> int:
        return int(self.kept.size)

    @classmethod
    def from_mask(
        cls,
        lam: float,
        eliminated_mask: np.ndarray,
        gamma_used: float,
        certificates: np.ndarray | None = None,
    ) -> "ScreeningReport":
        mask = np.asarray(eliminated_mask, dtype=bool)
        return cls(lam, np.flatnonzero(mask), np.flatnonzero(~mask), float(gamma_used), certificates)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "lambda": float(self.lam),
            "gamma_used": float(self.gamma_used),
            "eliminated_count": self.eliminated_count,
            "kept_indices": self.kept.tolist(),
        }
        if self.certificates is not None:
            payload["certificates"] = [float(c) if math.isfinite(c) else None for c in self.certificates]
        return payload


# ====================================================================================================
# 7. SOLVER OPTIONS / RESULT
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class SolveOptions:
    """
    Description:
        Termination controls shared by every reference solver.

    Args:
        tol (float): Target relative duality gap (gap <= tol * objective).
        max_iters (int): Iteration cap (coordinate sweeps / gradient steps).
        warm_w (np.ndarray | None): Initial primal vector.
        warm_intercept (float): Initial intercept for the classification solvers.

    Raises:
        UsageError: If tol <= 0 or max_iters < 1.
    """

    tol: float = 1e-9
    max_iters: int = 100_000
    warm_w: np.ndarray | None = None
    warm_intercept: float = 0.0

    def __post_init__(self) -> None:
        validate_positive(self.tol, "tol")
        if int(self.max_iters) < 1:
            raise UsageError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.warm_w is not None:
            object.__setattr__(self, "warm_w", _frozen_array(validate_finite(self.warm_w, "warm_w")))


@dataclass(frozen=True)
class SolverResult:
    """
    Description:
        Primal solution with its certified duality gap.

    Notes:
        - duality_gap is clamped at 0 for round-off below zero; objective is
          non-negative for every supported loss.
    """

    w: np.ndarray
    objective: float
    duality_gap: float
    iterations: int
    intercept: float = 0.0
    coordinate_updates: int = 0
    converged: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", _frozen_array(self.w))
        object.__setattr__(self, "duality_gap", max(float(self.duality_gap), 0.0))
        object.__setattr__(self, "objective", max(float(self.objective), 0.0))

    @property
    def relative_gap(self) -> float:
        if self.objective > 0:
            return self.duality_gap / self.objective
        return 0.0 if self.duality_gap == 0 else math.inf

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.w)
