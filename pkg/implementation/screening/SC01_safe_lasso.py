# ====================================================================================================
# SC01_safe_lasso.py
# ----------------------------------------------------------------------------------------------------
# SAFE feature elimination for the LASSO.
#
# Purpose:
#   - Compute lambda_max and the per-feature default ratios rho_k.
#   - Build the dual-scaling lower bound gamma from a warm start.
#   - Evaluate the closed-form support value P(gamma, x) of the dual localisation set.
#   - Run the full screening pass (eliminated / kept index sets with certificates).
#
# Usage:
#   from implementation.screening.SC01_safe_lasso import screen, lambda_max
#
#   report = screen(instance, 0.5 * lambda_max(instance.X, instance.y), WarmStart.default(instance))
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-12
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

from core.C05_error_handler import InvalidGeometryError, UsageError
from core.C06_validation_utils import validate_finite, validate_index, validate_length, validate_positive
from core.C18_parallel_executor import map_feature_blocks

from implementation.I01_sparse_matrices import ColumnOperator
from implementation.I02_problem_instances import LassoInstance, LassoVariant, ScreeningReport, WarmStart
from implementation.I03_numeric_constants import setting


# ====================================================================================================
# 3. LAMBDA_MAX AND THE DEFAULT TEST
# ----------------------------------------------------------------------------------------------------
def lambda_max(X: ColumnOperator, y: np.ndarray) -> float:
    """
    Description:
        ||X^T y||_inf: the smallest penalty at which w = 0 is optimal.

    Args:
        X (ColumnOperator): Feature matrix.
        y (np.ndarray): Response.

    Returns:
        float: lambda_max (0 for y = 0 or no features).
    """
    if X.n_cols == 0:
        return 0.0
    return float(np.max(np.abs(X.rmat_vec(y))))


def rho_values(X: ColumnOperator, y: np.ndarray) -> np.ndarray:
    """
    Description:
        rho_k = (||y|| ||x_k|| + |y^T x_k|) / (||y|| ||x_k|| + lambda_max) for every feature.

    Args:
        X (ColumnOperator): Feature matrix.
        y (np.ndarray): Response.

    Returns:
        np.ndarray: Ratios in [0, 1]; all zero when lambda_max = 0.

    Notes:
        - The default (w0 = 0) test eliminates feature k iff lambda > rho_k * lambda_max.
    """
    y_arr = np.asarray(y, dtype=np.float64)
    correlations = np.abs(X.rmat_vec(y_arr))
    lam_max = float(correlations.max()) if correlations.size else 0.0
    if lam_max == 0.0:
        return np.zeros(X.n_cols)

    spread = math.sqrt(float(y_arr @ y_arr)) * np.sqrt(X.col_norms_sq)
    return (spread + correlations) / (spread + lam_max)


def rho_default(X: ColumnOperator, y: np.ndarray, k: int) -> float:
    """Default-test ratio rho_k of a single feature (see rho_values)."""
    validate_index(k, X.n_cols, "feature index")
    return float(rho_values(X, y)[k])


# ====================================================================================================
# 4. DUAL SCALING BOUND
# ----------------------------------------------------------------------------------------------------
def gamma_bound(ws: WarmStart, lam: float, y: np.ndarray) -> float:
    """
    Description:
        Lower bound gamma <= phi(lambda) obtained by scaling the warm-start dual point:
        gamma = beta0^2 / (2 alpha0) * (1 - (1 - (alpha0 / beta0)(lambda / lambda0))_+^2).

    Args:
        ws (WarmStart): Warm start at lambda0.
        lam (float): Target penalty, 0 < lambda <= lambda0.
        y (np.ndarray): Response (beta0 = |y^T theta0|).

    Returns:
        float: gamma in [0, ||y||^2 / 2].

    Raises:
        UsageError: If lambda is outside (0, lambda0].

    Notes:
        - alpha0 = 0 or beta0 = 0 give gamma = 0 (scaling cannot improve on s = 0).
    """
    lam = validate_positive(lam, "lambda")
    if lam > ws.lambda0 * (1.0 + 1e-12):
        raise UsageError(f"lambda {lam:.12g} exceeds warm start lambda0 {ws.lambda0:.12g}")

    theta0 = ws.theta0
    alpha0 = float(theta0 @ theta0)
    beta0 = abs(float(np.asarray(y, dtype=np.float64) @ theta0))
    if alpha0 == 0.0 or beta0 == 0.0:
        return 0.0

    ratio = min(lam / ws.lambda0, 1.0)
    shortfall = max(1.0 - (alpha0 / beta0) * ratio, 0.0)
    gamma = beta0 * beta0 / (2.0 * alpha0) * (1.0 - shortfall * shortfall)
    return max(gamma, 0.0)


# ====================================================================================================
# 5. DUAL GEOMETRY AND P(gamma, x)
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class LassoDualGeometry:
    """
    Description:
        Scalars of the dual localisation set around theta0: g = theta0 + y,
        alpha0 = ||theta0||^2.

    Args:
        theta0 (np.ndarray): Warm-start dual point.
        y (np.ndarray): Response.
    """

    theta0: np.ndarray
    y: np.ndarray

    @cached_property
    def g(self) -> np.ndarray:
        return self.theta0 + self.y

    @cached_property
    def alpha0(self) -> float:
        return float(self.theta0 @ self.theta0)

    @cached_property
    def norm_y_sq(self) -> float:
        return float(self.y @ self.y)

    @cached_property
    def norm_g_sq(self) -> float:
        return float(self.g @ self.g)

    @cached_property
    def dual_value_at_theta0(self) -> float:
        """G(theta0) = -1/2 ||theta0||^2 - theta0^T y."""
        return -0.5 * self.alpha0 - float(self.theta0 @ self.y)

    @classmethod
    def from_warm_start(cls, ws: WarmStart, y: np.ndarray) -> "LassoDualGeometry":
        return cls(np.asarray(ws.theta0, dtype=np.float64), np.asarray(y, dtype=np.float64))

    def consistent_gamma(self, gamma: float) -> float:
        """
        Caps gamma at G(theta0) so theta0 lies inside the level set {G >= gamma}.
        Never binds for an exact warm start; inexact ones get a slightly weaker bound.
        """
        if self.norm_g_sq == 0.0:
            return gamma
        return max(min(gamma, self.dual_value_at_theta0), 0.0)

    def d_value(self, gamma: float) -> float:
        """D(gamma) = sqrt(||y||^2 - 2 gamma)."""
        radicand = self.norm_y_sq - 2.0 * gamma
        return math.sqrt(_clamp_radicand(radicand, self.norm_y_sq, "D(gamma)^2"))

    def d_tilde(self, gamma: float) -> float:
        """D~(gamma) = sqrt(D(gamma)^2 - ||g||^2)."""
        radicand = self.norm_y_sq - 2.0 * gamma - self.norm_g_sq
        return math.sqrt(_clamp_radicand(radicand, self.norm_y_sq, "D~(gamma)^2"))


def _clamp_radicand(value: float, scale: float, label: str) -> float:
    if value >= 0.0:
        return value
    tol = float(setting("screening", "radicand_tol"))
    if value >= -tol * max(scale, 1e-300):
        return 0.0
    raise InvalidGeometryError(f"{label} = {value:.6g} is negative beyond tolerance (inconsistent warm start)")


def _p_closed_form(
    geom: LassoDualGeometry,
    gamma: float,
    theta_dot_x: np.ndarray,
    y_dot_x: np.ndarray,
    g_dot_x: np.ndarray,
    x_norm_sq: np.ndarray,
) -> np.ndarray:
    """
    Vectorised P(gamma, x) for many columns at once.

    P = theta0^T x + Psi D~             if ||g||^2 ||x|| >= D x^T g
        -y^T x + ||x|| D                otherwise (and always when g = 0)
    """
    d_val = geom.d_value(gamma)
    x_norm = np.sqrt(x_norm_sq)
    second = -y_dot_x + x_norm * d_val

    if geom.norm_g_sq == 0.0:
        return second

    d_tilde = geom.d_tilde(gamma)
    psi_sq = x_norm_sq - g_dot_x * g_dot_x / geom.norm_g_sq
    tol = float(setting("screening", "radicand_tol"))
    bad = psi_sq < -tol * np.maximum(x_norm_sq, 1e-300)
    if np.any(bad):
        raise InvalidGeometryError(f"Psi^2 negative beyond tolerance for {int(bad.sum())} feature(s)")
    psi = np.sqrt(np.maximum(psi_sq, 0.0))
    first = theta_dot_x + psi * d_tilde

    use_first = geom.norm_g_sq * x_norm >= d_val * g_dot_x
    return np.where(use_first, first, second)


def p_value(geom: LassoDualGeometry, x: np.ndarray, gamma: float) -> float:
    """
    Description:
        P(gamma, x) = max x^T theta over {G(theta) >= gamma, g^T (theta - theta0) >= 0}.

    Args:
        geom (LassoDualGeometry): Geometry built from the warm start.
        x (np.ndarray): Dense feature column, length m.
        gamma (float): Lower bound, gamma <= ||y||^2 / 2 (+1e-12 slack).

    Returns:
        float: The support value (0 for the zero column with g = 0).

    Raises:
        InvalidGeometryError: If a radicand is negative beyond round-off.
        DataError: If x has the wrong length.
    """
    x_arr = validate_finite(x, "x")
    validate_length(x_arr, geom.y.size, "x")
    value = _p_closed_form(
        geom,
        float(gamma),
        np.array([geom.theta0 @ x_arr]),
        np.array([geom.y @ x_arr]),
        np.array([geom.g @ x_arr]),
        np.array([x_arr @ x_arr]),
    )
    return float(value[0])


def p_value_pair(geom: LassoDualGeometry, X: ColumnOperator, gamma: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Description:
        (P(gamma, x_k), P(gamma, -x_k)) for every column of X.

    Args:
        geom (LassoDualGeometry): Geometry built from the warm start.
        X (ColumnOperator): Feature matrix.
        gamma (float): Lower bound.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Support values in both directions.
    """
    t0x = X.rmat_vec(geom.theta0)
    yx = X.rmat_vec(geom.y)
    gx = X.rmat_vec(geom.g) if geom.norm_g_sq > 0 else np.zeros(X.n_cols)
    norms = np.asarray(X.col_norms_sq, dtype=np.float64)
    plus = _p_closed_form(geom, gamma, t0x, yx, gx, norms)
    minus = _p_closed_form(geom, gamma, -t0x, -yx, -gx, norms)
    return plus, minus


# ====================================================================================================
# 6. SCREENING PASS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ScreenOptions:
    """
    Args:
        keep_certificates (bool | None): Retain per-feature max(P+, P-); None reads config.
        max_workers (int | None): Worker count for the per-feature map; None resolves from config/env.
    """

    keep_certificates: bool | None = None
    max_workers: int | None = None


def elimination_mask(lam: float, certificates: np.ndarray, rel_guard: float | None = None) -> np.ndarray:
    """lambda - certificate > rel_guard * lambda, with NaN / +inf never eliminating."""
    guard = float(setting("screening", "rel_guard") if rel_guard is None else rel_guard)
    with np.errstate(invalid="ignore"):
        mask = (lam - certificates) > guard * lam
    return mask & np.isfinite(certificates)


def screen(
    instance: LassoInstance,
    lam: float,
    ws: WarmStart | None = None,
    opts: ScreenOptions | None = None,
) -> ScreeningReport:
    """
    Description:
        Applies the SAFE-LASSO test to every feature.

    Args:
        instance (LassoInstance): Plain-variant instance (apply center / elasticize first).
        lam (float): Target penalty > 0.
        ws (WarmStart | None): Warm start with lambda <= lambda0; defaults to (lambda_max, 0, -y).
        opts (ScreenOptions | None): Certificate retention and parallelism.

    Returns:
        ScreeningReport: Eliminated / kept sets and the gamma used.

    Raises:
        UsageError: On a non-plain instance or lambda above the warm start's lambda0
            (unless lambda > lambda_max, where every feature is eliminated).
        InvalidGeometryError: Propagated from the closed form.

    Notes:
        - Above lambda_max, theta = -y is dual optimal, so |x_k^T y| < lambda certifies
          every feature regardless of the warm start. The rel_guard margin still applies,
          so a feature whose correlation sits within the guard of lambda is kept.
    """
    if instance.variant is not LassoVariant.PLAIN:
        raise UsageError("screen() needs a plain instance; apply center() or elasticize() first")
    lam = validate_positive(lam, "lambda")
    opts = opts or ScreenOptions()
    keep = setting("screening", "keep_certificates") if opts.keep_certificates is None else opts.keep_certificates
    X, y = instance.X, instance.y

    correlations = np.abs(X.rmat_vec(y))
    lam_max = float(correlations.max()) if correlations.size else 0.0

    if lam > lam_max:
        logger.debug("lambda %.6g > lambda_max %.6g: default certificates used for %s features", lam, lam_max, X.n_cols)
        return ScreeningReport.from_mask(
            lam,
            elimination_mask(lam, correlations),
            0.5 * instance.norm_y_sq,
            correlations if keep else None,
        )

    ws = ws or WarmStart.default(instance)
    geom = LassoDualGeometry.from_warm_start(ws, y)
    gamma = geom.consistent_gamma(gamma_bound(ws, lam, y))

    def certify(block: np.ndarray) -> np.ndarray:
        plus, minus = p_value_pair(geom, X.select_columns(block), gamma)
        return np.maximum(plus, minus)

    certificates = map_feature_blocks(certify, X.n_cols, max_workers=opts.max_workers)
    mask = elimination_mask(lam, certificates)

    logger.debug(
        "SAFE-LASSO at lambda=%.6g (lambda0=%.6g, gamma=%.6g): eliminated %s / %s",
        lam, ws.lambda0, gamma, int(mask.sum()), X.n_cols,
    )
    return ScreeningReport.from_mask(lam, mask, gamma, certificates if keep else None)
