# ====================================================================================================
# SC03_safe_logreg.py
# ----------------------------------------------------------------------------------------------------
# SAFE feature elimination for l1-penalised logistic regression.
#
# Purpose:
#   - Logistic loss and its conjugate.
#   - Dual points (default w0 = 0 closed form, or from any primal w0 via bisection on the intercept).
#   - Lower bound gamma(lambda) by dual scaling.
#   - P_log by nested one-dimensional minimisation (outer nu, inner mu) and the screening pass.
#
# Usage:
#   from implementation.screening.SC03_safe_logreg import screen_logreg, default_dual_point
#
#   point = default_dual_point(instance)
#   report = screen_logreg(instance, 0.7 * point.lambda0)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-13
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

from core.C05_error_handler import ConvergenceError, DataError, UsageError
from core.C06_validation_utils import validate_finite, validate_length, validate_positive
from core.C18_parallel_executor import map_feature_blocks

from implementation.I02_problem_instances import LogRegInstance, ScreeningReport
from implementation.I03_numeric_constants import LOG2, setting
from implementation.screening.SC01_safe_lasso import ScreenOptions, elimination_mask


# ====================================================================================================
# 3. LOSS AND CONJUGATE
# ----------------------------------------------------------------------------------------------------
def flog(x: float | np.ndarray) -> float | np.ndarray:
    """f_log(x) = log(1 + exp(-x)), overflow-safe."""
    return np.logaddexp(0.0, -np.asarray(x, dtype=np.float64))


def flog_conj(t: float | np.ndarray) -> float | np.ndarray:
    """
    Description:
        f*_log(t) = (-t) log(-t) + (t + 1) log(t + 1) on [-1, 0], with 0 log 0 = 0.

    Returns:
        Conjugate value; +inf outside [-1, 0].
    """
    t_arr = np.asarray(t, dtype=np.float64)
    inside = (t_arr >= -1.0) & (t_arr <= 0.0)
    safe = np.where(inside, t_arr, -0.5)
    value = np.where(inside, xlogy(-safe, -safe) + xlogy(safe + 1.0, safe + 1.0), np.inf)
    return float(value) if value.ndim == 0 else value


# ====================================================================================================
# 4. DUAL POINTS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class LogRegDualPoint:
    """
    Description:
        Dual-feasible point of the logistic problem at lambda0.

    Args:
        theta0 (np.ndarray): Point in [-1, 0]^m with labels^T theta0 = 0.
        lambda0 (float): ||X^T theta0||_inf over the screening columns.
        v0 (float): Intercept the point was derived from.
        is_default (bool): True for the closed-form w0 = 0 point.

    Raises:
        DataError: If theta0 leaves [-1, 0].
    """

    theta0: np.ndarray
    lambda0: float
    v0: float
    is_default: bool = False

    def __post_init__(self) -> None:
        theta = np.array(validate_finite(self.theta0, "theta0"), copy=True)
        if np.any(theta < -1.0) or np.any(theta > 0.0):
            raise DataError("logistic dual point must lie in [-1, 0]^m")
        theta.setflags(write=False)
        object.__setattr__(self, "theta0", theta)


def _dual_norm(instance: LogRegInstance, theta: np.ndarray) -> float:
    if instance.n_features == 0:
        return 0.0
    return float(np.max(np.abs(instance.screening_matrix.rmat_vec(theta))))


def default_dual_point(instance: LogRegInstance) -> LogRegDualPoint:
    """
    Description:
        Closed-form dual point for w0 = 0: theta0 = -m_minus/m on the positive class,
        -m_plus/m on the negative class, v0 = log(m_plus / m_minus).

    Args:
        instance (LogRegInstance): Data with both classes present.

    Returns:
        LogRegDualPoint: Point with lambda0 = ||X^T theta0||_inf.
    """
    m = instance.n_rows
    theta = np.where(instance.labels > 0, -instance.m_minus / m, -instance.m_plus / m)
    v0 = math.log(instance.m_plus / instance.m_minus)
    return LogRegDualPoint(theta, _dual_norm(instance, theta), v0, is_default=True)


def dual_point_from_primal(instance: LogRegInstance, w0: np.ndarray) -> LogRegDualPoint:
    """
    Description:
        Fits the intercept v0 for a fixed w0 (root of sum_i y_i theta_i(v) = 0) and
        returns theta0(i) = -1 / (1 + exp(y_i z_i^T w0 + y_i v0)).

    Args:
        instance (LogRegInstance): Classification data.
        w0 (np.ndarray): Primal weights, length n.

    Returns:
        LogRegDualPoint: Point with |labels^T theta0| <= 1e-10.

    Raises:
        ConvergenceError: If the intercept search fails to reach the tolerance.
    """
    w = validate_finite(w0, "w0")
    validate_length(w, instance.n_features, "w0")
    margins = instance.screening_matrix.mat_vec(w)
    labels = instance.labels

    def theta_at(v: float) -> np.ndarray:
        return -expit(-(margins + labels * v))

    def slope(v: float) -> float:
        return float(labels @ theta_at(v))

    v_guess = math.log(instance.m_plus / instance.m_minus)
    width = 1.0 + float(np.max(np.abs(margins))) if margins.size else 1.0
    lo, hi = v_guess - width, v_guess + width
    for _ in range(int(setting("logreg_search", "outer_max_doublings"))):
        if slope(lo) < 0.0 < slope(hi):
            break
        width *= 2.0
        lo, hi = v_guess - width, v_guess + width

    v0 = v_guess
    if slope(v0) != 0.0:
        f_lo, f_hi = slope(lo), slope(hi)
        if not f_lo <= 0.0 <= f_hi:
            raise ConvergenceError("intercept search could not bracket the root")
        v0 = brentq(
            slope, lo, hi,
            xtol=1e-15, rtol=4 * np.finfo(float).eps,
            maxiter=int(setting("logreg_search", "bisection_max_iter")),
        )

    theta = theta_at(v0)
    residual = abs(float(labels @ theta))
    if residual > 1e-10:
        raise ConvergenceError(f"intercept search stopped with |y^T theta| = {residual:.3g}")
    return LogRegDualPoint(theta, _dual_norm(instance, theta), float(v0))


# ====================================================================================================
# 5. LOWER BOUND GAMMA
# ----------------------------------------------------------------------------------------------------
def gamma_lambda(lam: float, lambda0: float, m_plus: int, m_minus: int) -> float:
    """
    Description:
        gamma(lambda) = -m_plus f*(-s m_minus / m) - m_minus f*(-s m_plus / m), s = lambda / lambda0,
        valid for the default dual point.

    Args:
        lam (float): Target penalty, 0 < lambda <= lambda0.
        lambda0 (float): Penalty of the default dual point.
        m_plus (int): Positive class size.
        m_minus (int): Negative class size.

    Returns:
        float: gamma in [0, m log 2].
    """
    lam = validate_positive(lam, "lambda")
    lambda0 = validate_positive(lambda0, "lambda0")
    if lam > lambda0 * (1.0 + 1e-12):
        raise UsageError(f"lambda {lam:.12g} exceeds lambda0 {lambda0:.12g}")
    s = min(lam / lambda0, 1.0)
    m = m_plus + m_minus
    return float(-m_plus * flog_conj(-s * m_minus / m) - m_minus * flog_conj(-s * m_plus / m))


def intercept_only_value(instance: LogRegInstance) -> float:
    """phi at w = 0 with the optimal intercept: -m_plus log(m_plus / m) - m_minus log(m_minus / m)."""
    m = instance.n_rows
    return float(-xlogy(instance.m_plus, instance.m_plus / m) - xlogy(instance.m_minus, instance.m_minus / m))


def gamma_from_dual_point(point: LogRegDualPoint, lam: float) -> float:
    """
    Description:
        Best dual value over scalings s theta0 that stay feasible at lambda:
        max over 0 <= s <= min(1, lambda / lambda0) of -sum f*(s theta0).

    Args:
        point (LogRegDualPoint): Any dual point.
        lam (float): Target penalty > 0.

    Returns:
        float: Lower bound gamma <= phi(lambda).
    """
    lam = validate_positive(lam, "lambda")
    upper = 1.0 if point.lambda0 == 0.0 else min(1.0, lam / point.lambda0)
    theta = point.theta0

    def negative_dual(s: float) -> float:
        return float(np.sum(flog_conj(s * theta)))

    result = minimize_scalar(
        negative_dual,
        bounds=(0.0, upper),
        method="bounded",
        options={"xatol": float(setting("logreg_search", "inner_rel_tol")) * max(upper, 1e-300)},
    )
    return max(-float(result.fun), -negative_dual(upper), 0.0)


# ====================================================================================================
# 6. P_LOG
# ----------------------------------------------------------------------------------------------------
def _fixed_nu_value(gamma: float, values: np.ndarray, weights: np.ndarray) -> float:
    """
    min over mu > 0 of -gamma mu + mu sum_i w_i f_log(c_i / mu), with c repeated w_i times.
    """
    m = float(weights.sum())
    kappa = m * LOG2 - gamma
    if kappa <= 0.0:
        raise UsageError(f"gamma {gamma:.12g} must be below m log 2 = {m * LOG2:.12g}")

    positive = float(weights @ np.maximum(values, 0.0))
    boundary = float(weights @ np.maximum(-values, 0.0))
    if positive == 0.0 and boundary == 0.0:
        return 0.0

    mu_upper = (0.5 * positive + boundary) / kappa

    def objective(mu: float) -> float:
        return -gamma * mu + mu * float(weights @ np.logaddexp(0.0, -values / mu))

    result = minimize_scalar(
        objective,
        bounds=(0.0, mu_upper),
        method="bounded",
        options={
            "xatol": float(setting("logreg_search", "inner_rel_tol")) * mu_upper,
            "maxiter": int(setting("logreg_search", "inner_max_iter")),
        },
    )
    if not result.success:
        raise ConvergenceError(f"inner mu search did not converge: {result.message}")
    return min(float(result.fun), objective(mu_upper), boundary)


def p_log_fixed_nu(gamma: float, c: np.ndarray) -> float:
    """
    Description:
        F* = min over mu > 0 of -gamma mu + mu sum f_log(c_i / mu), searched on the
        bracket (0, mu_u] with mu_u = (1/2 1^T c_+ + F0) / (m log 2 - gamma).

    Args:
        gamma (float): Lower bound, gamma < m log 2.
        c (np.ndarray): Shifted column, length m.

    Returns:
        float: min(interior optimum, F0) where F0 = 1^T (-c)_+ is the limit at mu -> 0+.

    Raises:
        UsageError: If gamma >= m log 2.
        ConvergenceError: If the inner search exhausts its iteration budget.
    """
    values = validate_finite(c, "c")
    return _fixed_nu_value(float(gamma), values, np.ones(values.size))


def _column_terms(x: np.ndarray, labels: np.ndarray) -> Tuple[np.ndarray, np.ndarray, float, float]:
    nz = x != 0.0
    zero_plus = float(np.count_nonzero(~nz & (labels > 0)))
    zero_minus = float(np.count_nonzero(~nz & (labels < 0)))
    return x[nz], labels[nz], zero_plus, zero_minus


def _p_log_sparse(
    gamma: float,
    nz_values: np.ndarray,
    nz_labels: np.ndarray,
    zero_plus: float,
    zero_minus: float,
    nu_free: bool,
) -> float:
    """Nested search over the nonzero entries plus the two zero-entry classes."""
    weights = np.concatenate([np.ones(nz_values.size), [zero_plus, zero_minus]])

    def inner(nu: float) -> float:
        shifted = np.concatenate([nz_values + nz_labels * nu, [nu, -nu]])
        return _fixed_nu_value(gamma, shifted, weights)

    at_zero = inner(0.0)
    if nu_free:
        return at_zero

    bound = 1.0 + (float(np.max(np.abs(nz_values))) if nz_values.size else 0.0)
    tol = float(setting("logreg_search", "inner_rel_tol"))
    for _ in range(int(setting("logreg_search", "outer_max_doublings"))):
        result = minimize_scalar(inner, bounds=(-bound, bound), method="bounded", options={"xatol": tol * bound})
        if abs(float(result.x)) < bound * (1.0 - 1e-6):
            return min(float(result.fun), at_zero)
        bound *= 2.0
    raise ConvergenceError("outer nu search did not find an interior minimum")


def p_log(gamma: float, x: np.ndarray, labels: np.ndarray, nu_free: bool = False) -> float:
    """
    Description:
        P_log(gamma, x) = min over mu > 0 and nu of -gamma mu + mu sum f_log((x_i + y_i nu) / mu).

    Args:
        gamma (float): Lower bound, gamma < m log 2.
        x (np.ndarray): Screening column, length m.
        labels (np.ndarray): Labels in {-1, +1}.
        nu_free (bool): Fix nu = 0 (cheaper, more conservative).

    Returns:
        float: The support value; never above p_log_fixed_nu(gamma, x).

    Notes:
        - Zero entries of x only enter through f_log(+nu / mu) and f_log(-nu / mu), so
          the work per evaluation is proportional to the column's nonzero count.
    """
    x_arr = validate_finite(x, "x")
    labels_arr = np.asarray(labels, dtype=np.float64)
    validate_length(labels_arr, x_arr.size, "labels")
    return _p_log_sparse(float(gamma), *_column_terms(x_arr, labels_arr), nu_free)


# ====================================================================================================
# 7. SCREENING PASS
# ----------------------------------------------------------------------------------------------------
def screen_logreg(
    instance: LogRegInstance,
    lam: float,
    point: LogRegDualPoint | None = None,
    nu_free: bool = False,
    opts: ScreenOptions | None = None,
) -> ScreeningReport:
    """
    Description:
        Removes feature k when lambda - max(P_log(gamma, x_k), P_log(gamma, -x_k)) > 1e-10 lambda.

    Args:
        instance (LogRegInstance): Classification data.
        lam (float): Target penalty > 0.
        point (LogRegDualPoint | None): Dual point; the default w0 = 0 point when None.
        nu_free (bool): Use the nu = 0 variant of P_log.
        opts (ScreenOptions | None): Certificate retention and parallelism.

    Returns:
        ScreeningReport: Eliminated / kept sets with the guarded gamma used.

    Raises:
        UsageError: If lambda exceeds the dual point's lambda0 but not the default lambda0.

    Notes:
        - Above the default lambda0, theta0 is dual optimal and w = 0, so every feature is removed.
        - A feature whose inner search fails to converge is kept.
    """
    lam = validate_positive(lam, "lambda")
    opts = opts or ScreenOptions()
    keep = setting("screening", "keep_certificates") if opts.keep_certificates is None else opts.keep_certificates
    default = default_dual_point(instance)
    point = point or default
    m = instance.n_rows
    X = instance.screening_matrix

    if lam > default.lambda0:
        correlations = np.abs(X.rmat_vec(default.theta0))
        logger.debug("lambda %.6g > lambda0 %.6g: all features eliminated", lam, default.lambda0)
        return ScreeningReport.from_mask(
            lam,
            np.ones(instance.n_features, dtype=bool),
            intercept_only_value(instance),
            correlations if keep else None,
        )
    if lam > point.lambda0 * (1.0 + 1e-12):
        raise UsageError(f"lambda {lam:.12g} exceeds the dual point's lambda0 {point.lambda0:.12g}")

    if point.is_default:
        gamma = gamma_lambda(lam, point.lambda0, instance.m_plus, instance.m_minus)
    else:
        gamma = gamma_from_dual_point(point, lam)
    gamma -= float(setting("screening", "gamma_guard")) * m * LOG2

    labels = instance.labels

    def certify(block: np.ndarray) -> np.ndarray:
        out = np.empty(block.size)
        for j, k in enumerate(block):
            rows, vals = X.column(int(k))
            zero_plus = float(instance.m_plus - np.count_nonzero(labels[rows] > 0))
            zero_minus = float(instance.m_minus - np.count_nonzero(labels[rows] < 0))
            try:
                plus = _p_log_sparse(gamma, vals, labels[rows], zero_plus, zero_minus, nu_free)
                minus = _p_log_sparse(gamma, -vals, labels[rows], zero_plus, zero_minus, nu_free)
                out[j] = max(plus, minus)
            except ConvergenceError as exc:
                logger.warning("Feature %s kept: %s", int(k), exc)
                out[j] = math.inf
        return out

    certificates = map_feature_blocks(certify, instance.n_features, max_workers=opts.max_workers)
    mask = elimination_mask(lam, certificates)

    logger.debug(
        "SAFE-LOGREG at lambda=%.6g (lambda0=%.6g, gamma=%.6g, nu_free=%s): eliminated %s / %s",
        lam, point.lambda0, gamma, nu_free, int(mask.sum()), instance.n_features,
    )
    return ScreeningReport.from_mask(lam, mask, gamma, certificates if keep else None)
