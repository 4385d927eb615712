# ====================================================================================================
# SO01_lasso_solver.py
# ----------------------------------------------------------------------------------------------------
# Reference LASSO solver with a certified duality gap.
#
# Purpose:
#   - Cyclic coordinate descent with soft-thresholding (exact zeros in the output).
#   - Duality gap from the scaled residual dual point.
#   - Variant wrapper that solves intercept / elastic-net instances through their transforms.
#
# Usage:
#   from implementation.solvers.SO01_lasso_solver import solve_lasso, duality_gap_lasso
#
#   result = solve_lasso(instance, 0.5 * lam_max, SolveOptions(tol=1e-9))
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-14
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

from implementation.I02_problem_instances import (
    LassoInstance,
    LassoVariant,
    SolveOptions,
    SolverResult,
    intercept_from_centered,
    to_plain,
)


# ====================================================================================================
# 3. DUALITY GAP
# ----------------------------------------------------------------------------------------------------
def lasso_dual_point(instance: LassoInstance, lam: float, w: np.ndarray) -> np.ndarray:
    """
    Description:
        Dual-feasible theta = s (X w - y), with s the best scaling inside
        |s| <= lambda / ||X^T (X w - y)||_inf.

    Args:
        instance (LassoInstance): Plain LASSO instance.
        lam (float): Penalty.
        w (np.ndarray): Primal point.

    Returns:
        np.ndarray: theta with ||X^T theta||_inf <= lambda.
    """
    residual = instance.X.mat_vec(w) - instance.y
    return _best_scaling(instance, lam, residual) * residual


def _best_scaling(instance: LassoInstance, lam: float, residual: np.ndarray) -> float:
    norm_sq = float(residual @ residual)
    if norm_sq == 0.0:
        return 0.0
    s = -float(instance.y @ residual) / norm_sq
    dual_norm = float(np.max(np.abs(instance.X.rmat_vec(residual)))) if instance.n_features else 0.0
    if dual_norm > 0.0:
        bound = lam / dual_norm
        s = min(max(s, -bound), bound)
    return s


def duality_gap_lasso(instance: LassoInstance, lam: float, w: np.ndarray) -> float:
    """
    Description:
        primal(w) - G(theta) with G(theta) = -1/2 ||theta||^2 - theta^T y at the scaled
        residual dual point.

    Args:
        instance (LassoInstance): Plain LASSO instance.
        lam (float): Penalty >= 0.
        w (np.ndarray): Finite primal point, length n.

    Returns:
        float: Duality gap, clamped at 0 against round-off.
    """
    w_arr = validate_finite(w, "w")
    validate_length(w_arr, instance.n_features, "w")
    residual = instance.X.mat_vec(w_arr) - instance.y
    norm_sq = float(residual @ residual)
    primal = 0.5 * norm_sq + lam * float(np.abs(w_arr).sum())

    s = _best_scaling(instance, lam, residual)
    dual = -0.5 * s * s * norm_sq - s * float(instance.y @ residual)
    return max(primal - dual, 0.0)


# ====================================================================================================
# 4. COORDINATE DESCENT
# ----------------------------------------------------------------------------------------------------
def _soft_threshold(value: float, threshold: float) -> float:
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def _sweep(instance: LassoInstance, lam: float, w: np.ndarray, residual: np.ndarray, indices: Iterable[int]) -> float:
    """One coordinate pass over indices; returns the largest |change| in w."""
    X = instance.X
    norms = X.col_norms_sq
    largest = 0.0
    for k in indices:
        norm_k = norms[k]
        if norm_k == 0.0:
            continue
        old = w[k]
        rho = X.col_dot(k, residual) + norm_k * old
        new = _soft_threshold(rho, lam) / norm_k
        delta = new - old
        if delta != 0.0:
            X.col_axpy(k, -delta, residual)
            w[k] = new
            largest = max(largest, abs(delta))
    return largest


def solve_lasso(instance: LassoInstance, lam: float, opts: SolveOptions | None = None) -> SolverResult:
    """
    Description:
        Minimises 1/2 ||X w - y||^2 + lambda ||w||_1 by cyclic coordinate descent.

    Args:
        instance (LassoInstance): Plain instance.
        lam (float): Penalty > 0.
        opts (SolveOptions | None): Tolerance, sweep cap and optional warm start.

    Returns:
        SolverResult: Exactly sparse w, its objective and certified gap; converged is
        False when max_iters full sweeps did not reach gap <= tol * objective.

    Raises:
        UsageError: On a non-plain instance.

    Notes:
        - Each outer iteration is one full sweep followed by inner sweeps restricted to
          the current support; the gap is checked after every full sweep.
        - coordinate_updates counts every coordinate visited.
    """
    if instance.variant is not LassoVariant.PLAIN:
        raise UsageError("solve_lasso() needs a plain instance; use solve_lasso_variant()")
    lam = validate_positive(lam, "lambda")
    opts = opts or SolveOptions()
    n = instance.n_features

    w = np.zeros(n) if opts.warm_w is None else np.array(opts.warm_w, dtype=np.float64)
    validate_length(w, n, "warm_w")
    residual = instance.y - instance.X.mat_vec(w)
    scale = max(1.0, float(np.max(np.abs(instance.y)))) if instance.n_rows else 1.0

    updates = 0
    gap = duality_gap_lasso(instance, lam, w)
    objective = instance.objective(w, lam)
    iterations = 0
    converged = gap <= opts.tol * objective

    all_features = range(n)
    while not converged and iterations < opts.max_iters:
        iterations += 1
        _sweep(instance, lam, w, residual, all_features)
        updates += n

        active = np.flatnonzero(w)
        for _ in range(max(10, 2 * active.size)):
            if active.size == 0:
                break
            change = _sweep(instance, lam, w, residual, active)
            updates += active.size
            if change <= 1e-13 * scale:
                break

        gap = duality_gap_lasso(instance, lam, w)
        objective = instance.objective(w, lam)
        converged = gap <= opts.tol * objective

    if not converged:
        logger.warning(
            "solve_lasso stopped after %s sweeps at lambda=%.6g with gap %.3g (objective %.6g)",
            iterations, lam, gap, objective,
        )
    else:
        logger.debug("solve_lasso converged in %s sweeps (%s updates), gap %.3g", iterations, updates, gap)

    return SolverResult(
        w=w,
        objective=objective,
        duality_gap=gap,
        iterations=iterations,
        coordinate_updates=updates,
        converged=converged,
    )


def solve_lasso_variant(instance: LassoInstance, lam: float, opts: SolveOptions | None = None) -> SolverResult:
    """
    Description:
        Solves any LASSO variant through its transform to a plain instance.

    Args:
        instance (LassoInstance): Plain, intercept or elastic instance.
        lam (float): Penalty > 0.
        opts (SolveOptions | None): Solver options.

    Returns:
        SolverResult: For the intercept variant, `intercept` holds ybar - xbar^T w.
    """
    plain = to_plain(instance)
    result = solve_lasso(plain, lam, opts)
    if instance.variant is LassoVariant.INTERCEPT:
        result = replace(result, intercept=intercept_from_centered(instance, result.w))
    return result
