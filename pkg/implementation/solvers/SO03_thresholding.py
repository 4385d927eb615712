# ====================================================================================================
# SO03_thresholding.py
# ----------------------------------------------------------------------------------------------------
# Post-solve thresholding rules for inexact LASSO solutions.
#
# Purpose:
#   - KKT rule: zero w_k whenever |x_k^T (X w - y)| <= 0.9999 lambda.
#   - TR(alpha) rule: zero the smallest entries while the objective bound (1 + alpha eps) phi holds.
#
# Usage:
#   from implementation.solvers.SO03_thresholding import kkt_threshold, tr_threshold, certified_eps
#
#   w_tr = tr_threshold(result.w, instance, lam, certified_eps(result), alpha=2.0)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-16
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

from core.C05_error_handler import UsageError
from core.C06_validation_utils import validate_finite, validate_length, validate_positive

from implementation.I02_problem_instances import LassoInstance, SolverResult
from implementation.I03_numeric_constants import setting


def certified_eps(result: SolverResult) -> float:
    """Relative accuracy eps with objective <= (1 + eps) phi: gap / (objective - gap)."""
    lower = result.objective - result.duality_gap
    if lower <= 0.0:
        return 0.0 if result.duality_gap == 0.0 else math.inf
    return result.duality_gap / lower


def kkt_threshold(w: np.ndarray, instance: LassoInstance, lam: float) -> np.ndarray:
    """
    Description:
        Zeros every w_k with |x_k^T (X w - y)| <= kkt_factor * lambda (0.9999 by default).

    Args:
        w (np.ndarray): Primal vector, length n.
        instance (LassoInstance): Plain LASSO instance.
        lam (float): Penalty >= 0.

    Returns:
        np.ndarray: Thresholded copy of w.
    """
    w_arr = np.array(validate_finite(w, "w"), copy=True)
    validate_length(w_arr, instance.n_features, "w")
    correlation = np.abs(instance.X.rmat_vec(instance.X.mat_vec(w_arr) - instance.y))
    w_arr[correlation <= float(setting("thresholding", "kkt_factor")) * lam] = 0.0
    return w_arr


def threshold_costs(w: np.ndarray, instance: LassoInstance) -> Tuple[np.ndarray, np.ndarray, List[np.ndarray]]:
    """
    Description:
        Walks the nonzero |w_k| in ascending order (ties together) and returns the cost
        C(tau) = 1/2 ||X delta||^2 + delta^T X^T (X w - y) after each group, where
        delta = w_tau - w.

    Args:
        w (np.ndarray): Primal vector.
        instance (LassoInstance): Plain LASSO instance.

    Returns:
        Tuple: (thresholds, costs, groups) with one entry per distinct |w_k|.

    Notes:
        - X delta is kept as a running vector, so the whole walk costs O(nnz(X)).
    """
    w_arr = validate_finite(w, "w")
    validate_length(w_arr, instance.n_features, "w")
    X = instance.X
    correlation = X.rmat_vec(X.mat_vec(w_arr) - instance.y)

    support = np.flatnonzero(w_arr)
    magnitudes = np.abs(w_arr[support])
    order = np.argsort(magnitudes, kind="stable")
    support, magnitudes = support[order], magnitudes[order]
    thresholds, starts = np.unique(magnitudes, return_index=True)
    groups = np.split(support, starts[1:]) if support.size else []

    x_delta = np.zeros(instance.n_rows)
    cross = 0.0
    costs = np.empty(thresholds.size)
    for g, group in enumerate(groups):
        for k in group:
            X.col_axpy(int(k), -w_arr[k], x_delta)
            cross -= w_arr[k] * correlation[k]
        costs[g] = 0.5 * float(x_delta @ x_delta) + cross
    return thresholds, costs, groups


def tr_threshold(w: np.ndarray, instance: LassoInstance, lam: float, eps: float, alpha: float | None = None) -> np.ndarray:
    """
    Description:
        TR(alpha): zeros all |w_k| <= tau for the largest tau with
        C(tau) <= kappa phi*, kappa = (1 + alpha eps) / (1 + eps) - 1, phi* = objective(w) / (1 + eps).

    Args:
        w (np.ndarray): Solution with objective(w) <= (1 + eps) phi(lambda).
        instance (LassoInstance): Plain LASSO instance.
        lam (float): Penalty > 0.
        eps (float): Certified relative accuracy of w (see certified_eps).
        alpha (float | None): Degradation factor > 1; `thresholding.alpha` when None.

    Returns:
        np.ndarray: Thresholded copy of w; objective <= (1 + alpha eps) phi(lambda).

    Raises:
        UsageError: If alpha <= 1 or eps < 0.
    """
    alpha = float(setting("thresholding", "alpha") if alpha is None else alpha)
    if not alpha > 1.0:
        raise UsageError(f"alpha must be > 1, got {alpha:g}")
    eps = validate_positive(eps, "eps", allow_zero=True)
    lam = validate_positive(lam, "lambda")

    w_arr = np.array(validate_finite(w, "w"), copy=True)
    kappa = (1.0 + alpha * eps) / (1.0 + eps) - 1.0
    budget = kappa * instance.objective(w_arr, lam) / (1.0 + eps)

    thresholds, costs, groups = threshold_costs(w_arr, instance)
    feasible = np.flatnonzero(costs <= budget)
    if feasible.size == 0:
        return w_arr

    last = int(feasible[-1])
    for group in groups[: last + 1]:
        w_arr[group] = 0.0
    logger.debug(
        "TR(%.3g) at eps=%.3g: tau=%.6g zeroes %s entries (C=%.3g <= %.3g)",
        alpha, eps, thresholds[last], sum(g.size for g in groups[: last + 1]), costs[last], budget,
    )
    return w_arr
