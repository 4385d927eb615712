# ====================================================================================================
# SO02_classifier_solvers.py
# ----------------------------------------------------------------------------------------------------
# Reference solvers for l1-penalised logistic regression and hinge-loss classification.
#
# Purpose:
#   - Monotone accelerated proximal gradient (backtracking) for the logistic problem.
#   - Huber-smoothed proximal gradient with continuation for the hinge problem.
#   - Exact hinge oracle as a linear programme (HiGHS via scipy.optimize.linprog).
#   - Duality-gap certificates for both losses (unpenalised intercept in every model).
#
# Usage:
#   from implementation.solvers.SO02_classifier_solvers import solve_logreg, solve_hinge_lp
#
#   result = solve_logreg(instance, 0.5 * default_dual_point(instance).lambda0)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-15
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

from core.C05_error_handler import ConvergenceError
from core.C06_validation_utils import validate_finite, validate_length, validate_positive

from implementation.I02_problem_instances import (
    ClassificationInstance,
    LogRegInstance,
    SolveOptions,
    SolverResult,
    SvmInstance,
)
from implementation.screening.SC02_safe_svm import lambda_max_bar
from implementation.screening.SC03_safe_logreg import (
    default_dual_point,
    dual_point_from_primal,
    flog,
    gamma_from_dual_point,
)


def _soft_threshold(values: np.ndarray, threshold: float) -> np.ndarray:
    return np.sign(values) * np.maximum(np.abs(values) - threshold, 0.0)


def _initial_point(instance: ClassificationInstance, opts: SolveOptions) -> Tuple[np.ndarray, float]:
    n = instance.n_features
    w = np.zeros(n) if opts.warm_w is None else np.array(opts.warm_w, dtype=np.float64)
    validate_length(w, n, "warm_w")
    return w, float(opts.warm_intercept)


# ====================================================================================================
# 3. LOGISTIC REGRESSION
# ----------------------------------------------------------------------------------------------------
def logreg_objective(instance: LogRegInstance, lam: float, w: np.ndarray, v: float) -> float:
    """sum_i f_log(y_i (z_i^T w + v)) + lambda ||w||_1."""
    margins = instance.screening_matrix.mat_vec(w) + instance.labels * v
    return float(np.sum(flog(margins))) + lam * float(np.abs(w).sum())


def duality_gap_logreg(instance: LogRegInstance, lam: float, w: np.ndarray) -> Tuple[float, float, float]:
    """
    Description:
        Certified gap at w with its best intercept. The dual point comes from the
        logistic residual at (w, v*) scaled back into the feasible set at lambda.

    Args:
        instance (LogRegInstance): Classification data.
        lam (float): Penalty > 0.
        w (np.ndarray): Primal weights.

    Returns:
        Tuple[float, float, float]: (gap, primal objective at (w, v*), v*).
    """
    w_arr = validate_finite(w, "w")
    point = dual_point_from_primal(instance, w_arr)
    primal = logreg_objective(instance, lam, w_arr, point.v0)
    dual = gamma_from_dual_point(point, lam)
    return max(primal - dual, 0.0), primal, point.v0


def solve_logreg(instance: LogRegInstance, lam: float, opts: SolveOptions | None = None) -> SolverResult:
    """
    Description:
        Minimises sum f_log(y_i (z_i^T w + v)) + lambda ||w||_1 over (w, v) by monotone
        accelerated proximal gradient with backtracking.

    Args:
        instance (LogRegInstance): Classification data.
        lam (float): Penalty > 0.
        opts (SolveOptions | None): Tolerance, iteration cap and warm start.

    Returns:
        SolverResult: w, intercept v and the certified gap (checked every 10 steps).

    Notes:
        - Accepted iterates never increase the objective.
        - lambda above the default lambda0 returns w = 0 with the closed-form intercept.
    """
    lam = validate_positive(lam, "lambda")
    opts = opts or SolveOptions()
    X = instance.screening_matrix
    labels = instance.labels

    default = default_dual_point(instance)
    if lam >= default.lambda0 and opts.warm_w is None:
        w = np.zeros(instance.n_features)
        gap, primal, v = duality_gap_logreg(instance, lam, w)
        return SolverResult(w=w, objective=primal, duality_gap=gap, iterations=0, intercept=v)

    w, v = _initial_point(instance, opts)

    def smooth(w_vec: np.ndarray, v_val: float) -> float:
        return float(np.sum(flog(X.mat_vec(w_vec) + labels * v_val)))

    def gradient(w_vec: np.ndarray, v_val: float) -> Tuple[np.ndarray, float]:
        theta = -expit(-(X.mat_vec(w_vec) + labels * v_val))
        return X.rmat_vec(theta), float(labels @ theta)

    lipschitz = 1.0
    t = 1.0
    yw, yv = w.copy(), v
    objective = smooth(w, v) + lam * float(np.abs(w).sum())
    gap, converged, iterations = math.inf, False, 0

    while iterations < opts.max_iters:
        iterations += 1
        base = smooth(yw, yv)
        gw, gv = gradient(yw, yv)
        while True:
            zw = _soft_threshold(yw - gw / lipschitz, lam / lipschitz)
            zv = yv - gv / lipschitz
            dw, dv = zw - yw, zv - yv
            upper = base + float(gw @ dw) + gv * dv + 0.5 * lipschitz * (float(dw @ dw) + dv * dv)
            if smooth(zw, zv) <= upper + 1e-12 * abs(base):
                break
            lipschitz *= 2.0

        z_objective = smooth(zw, zv) + lam * float(np.abs(zw).sum())
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        if z_objective <= objective:
            new_w, new_v, objective = zw, zv, z_objective
        else:
            new_w, new_v = w, v
        yw = new_w + (t / t_next) * (zw - new_w) + ((t - 1.0) / t_next) * (new_w - w)
        yv = new_v + (t / t_next) * (zv - new_v) + ((t - 1.0) / t_next) * (new_v - v)
        w, v, t = new_w, new_v, t_next

        if iterations % 10 == 0:
            gap, primal, v_best = duality_gap_logreg(instance, lam, w)
            if gap <= opts.tol * primal:
                converged = True
                v, objective = v_best, primal
                break

    if not converged:
        gap, objective, v = duality_gap_logreg(instance, lam, w)
        converged = gap <= opts.tol * objective
        if not converged:
            logger.warning("solve_logreg stopped after %s steps with gap %.3g", iterations, gap)

    return SolverResult(w=w, objective=objective, duality_gap=gap, iterations=iterations, intercept=v, converged=converged)


# ====================================================================================================
# 4. HINGE LOSS
# ----------------------------------------------------------------------------------------------------
def hinge_objective(instance: SvmInstance, lam: float, w: np.ndarray, v: float) -> float:
    """sum_i (1 - y_i (z_i^T w + v))_+ + lambda ||w||_1."""
    margins = instance.screening_matrix.mat_vec(w) + instance.labels * v
    return float(np.maximum(1.0 - margins, 0.0).sum()) + lam * float(np.abs(w).sum())


def best_hinge_intercept(instance: SvmInstance, w: np.ndarray) -> float:
    """
    Description:
        argmin over v of sum_i (1 - y_i z_i^T w - y_i v)_+ by evaluating every breakpoint.

    Returns:
        float: An optimal intercept.
    """
    slack = 1.0 - instance.screening_matrix.mat_vec(w)
    plus = np.sort(slack[instance.plus_rows])
    minus = np.sort(slack[instance.minus_rows])
    candidates = np.concatenate([plus, -minus])

    def tail_sum(sorted_vals: np.ndarray, cut: np.ndarray) -> np.ndarray:
        suffix = np.concatenate([np.cumsum(sorted_vals[::-1])[::-1], [0.0]])
        idx = np.searchsorted(sorted_vals, cut, side="right")
        return suffix[idx] - (sorted_vals.size - idx) * cut

    values = tail_sum(plus, candidates) + tail_sum(minus, -candidates)
    return float(candidates[int(np.argmin(values))])


def hinge_dual_value(instance: SvmInstance, lam: float, u: np.ndarray) -> float:
    """
    Description:
        Projects u onto {0 <= u <= 1, y^T u = 0, ||X^T u||_inf <= lambda} by class
        balancing then scaling, and returns the dual objective 1^T u.

    Args:
        instance (SvmInstance): Classification data.
        lam (float): Penalty > 0.
        u (np.ndarray): Candidate in [0, 1]^m (negated hinge dual variable).

    Returns:
        float: Dual value, a lower bound on the optimal hinge objective.
    """
    u = np.clip(np.asarray(u, dtype=np.float64), 0.0, 1.0)
    plus_sum = float(u[instance.plus_rows].sum())
    minus_sum = float(u[instance.minus_rows].sum())
    if plus_sum > minus_sum:
        u[instance.plus_rows] *= minus_sum / plus_sum
    elif minus_sum > plus_sum:
        u[instance.minus_rows] *= plus_sum / minus_sum

    dual_norm = float(np.max(np.abs(instance.screening_matrix.rmat_vec(u)))) if instance.n_features else 0.0
    if dual_norm > lam:
        u *= lam / dual_norm
    return float(u.sum())


def duality_gap_hinge(instance: SvmInstance, lam: float, w: np.ndarray, v: float, u: np.ndarray) -> float:
    """Hinge objective at (w, v) minus the dual value of the projected u."""
    return max(hinge_objective(instance, lam, w, v) - hinge_dual_value(instance, lam, u), 0.0)


def _balanced_u(instance: SvmInstance) -> np.ndarray:
    """u = 1 on the minority class, m_under / m_major on the majority: dual optimal when w = 0 is."""
    u = np.empty(instance.n_rows)
    if instance.m_plus <= instance.m_minus:
        u[instance.plus_rows] = 1.0
        u[instance.minus_rows] = instance.m_plus / instance.m_minus
    else:
        u[instance.minus_rows] = 1.0
        u[instance.plus_rows] = instance.m_minus / instance.m_plus
    return u


def solve_hinge(instance: SvmInstance, lam: float, opts: SolveOptions | None = None) -> SolverResult:
    """
    Description:
        Approximately minimises sum (1 - y_i (z_i^T w + v))_+ + lambda ||w||_1 with a
        Huber-smoothed hinge and proximal gradient, shrinking the smoothing width by 10
        per stage until the certified gap reaches tol * objective.

    Args:
        instance (SvmInstance): Classification data.
        lam (float): Penalty > 0.
        opts (SolveOptions | None): Tolerance, total step cap and warm start.

    Returns:
        SolverResult: Best iterate found; converged reflects the certified gap.
    """
    lam = validate_positive(lam, "lambda")
    opts = opts or SolveOptions()
    X = instance.screening_matrix
    labels = instance.labels

    if lam >= lambda_max_bar(instance) and opts.warm_w is None:
        w = np.zeros(instance.n_features)
        v = best_hinge_intercept(instance, w)
        gap = duality_gap_hinge(instance, lam, w, v, _balanced_u(instance))
        return SolverResult(w=w, objective=hinge_objective(instance, lam, w, v), duality_gap=gap, iterations=0, intercept=v)

    w, v = _initial_point(instance, opts)
    iterations = 0
    width = 1.0
    best = (math.inf, w.copy(), v, math.inf)

    def huber_parts(w_vec: np.ndarray, v_val: float, mu: float) -> Tuple[float, np.ndarray]:
        slack = 1.0 - (X.mat_vec(w_vec) + labels * v_val)
        clipped = np.clip(slack / mu, 0.0, 1.0)
        value = np.where(slack > mu, slack - 0.5 * mu, np.where(slack > 0.0, 0.5 * slack * clipped, 0.0))
        return float(value.sum()), clipped

    while iterations < opts.max_iters:
        lipschitz = 1.0 / width
        stage_previous = math.inf
        for _ in range(2000):
            if iterations >= opts.max_iters:
                break
            iterations += 1
            base, u = huber_parts(w, v, width)
            gw, gv = -X.rmat_vec(u), -float(labels @ u)
            while True:
                zw = _soft_threshold(w - gw / lipschitz, lam / lipschitz)
                zv = v - gv / lipschitz
                dw, dv = zw - w, zv - v
                upper = base + float(gw @ dw) + gv * dv + 0.5 * lipschitz * (float(dw @ dw) + dv * dv)
                if huber_parts(zw, zv, width)[0] <= upper + 1e-12 * max(abs(base), 1.0):
                    break
                lipschitz *= 2.0
            w, v = zw, zv
            value = huber_parts(w, v, width)[0] + lam * float(np.abs(w).sum())
            if abs(stage_previous - value) <= opts.tol * max(value, 1.0):
                break
            stage_previous = value

        v_best = best_hinge_intercept(instance, w)
        u_cert = huber_parts(w, v_best, width)[1]
        objective = hinge_objective(instance, lam, w, v_best)
        gap = max(objective - hinge_dual_value(instance, lam, u_cert), 0.0)
        if gap < best[3]:
            best = (objective, w.copy(), v_best, gap)
        logger.debug("solve_hinge width=%.1e objective=%.9g gap=%.3g", width, objective, gap)
        if gap <= opts.tol * objective:
            break
        width *= 0.1
        if width < 1e-14:
            break

    objective, w, v, gap = best
    converged = gap <= opts.tol * objective
    if not converged:
        logger.warning("solve_hinge stopped after %s steps with gap %.3g", iterations, gap)
    return SolverResult(w=w, objective=objective, duality_gap=gap, iterations=iterations, intercept=v, converged=converged)


def solve_hinge_lp(instance: SvmInstance, lam: float) -> SolverResult:
    """
    Description:
        Exact hinge + l1 solve as the linear programme
        min lambda 1^T (w+ + w-) + 1^T xi  s.t.  xi >= 1 - X (w+ - w-) - y v,  w+, w-, xi >= 0.

    Args:
        instance (SvmInstance): Classification data.
        lam (float): Penalty > 0.

    Returns:
        SolverResult: Optimal (w, v) with the gap certified from the LP duals.

    Raises:
        ConvergenceError: If HiGHS reports anything other than an optimal solution.
    """
    lam = validate_positive(lam, "lambda")
    m, n = instance.n_rows, instance.n_features
    X = instance.screening_matrix.csc
    labels = instance.labels.reshape(-1, 1)

    cost = np.concatenate([np.full(2 * n, lam), [0.0], np.ones(m)])
    a_ub = sp.hstack([-X, X, sp.csc_matrix(-labels), -sp.identity(m, format="csc")], format="csc")
    b_ub = -np.ones(m)
    bounds = [(0, None)] * (2 * n) + [(None, None)] + [(0, None)] * m

    result = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if result.status != 0:
        raise ConvergenceError(f"hinge LP did not solve: {result.message}")

    w = result.x[:n] - result.x[n:2 * n]
    v = float(result.x[2 * n])
    u = -np.asarray(result.ineqlin.marginals, dtype=np.float64)
    objective = hinge_objective(instance, lam, w, v)
    gap = duality_gap_hinge(instance, lam, w, v, u)
    logger.debug("solve_hinge_lp lambda=%.6g objective=%.9g gap=%.3g", lam, objective, gap)
    return SolverResult(w=w, objective=objective, duality_gap=gap, iterations=int(result.nit), intercept=v)
