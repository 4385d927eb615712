# ====================================================================================================
# WF01_budget_workflows.py
# ----------------------------------------------------------------------------------------------------
# Feature-budget workflows: bisection on lambda to a kept-feature budget, and the memory-limited
# LASSO solve that walks lambda down in stages while never touching more than M feature columns.
#
# Purpose:
#   - bisect_lambda: smallest lambda whose SAFE screen keeps at most M features (window eps_F).
#   - solve_memory_limited: staged reduced solves with warm starts until lambda_d is reached.
#
# Usage:
#   from implementation.workflows.WF01_budget_workflows import bisect_lambda, solve_memory_limited
#
#   outcome = solve_memory_limited(instance, 0.3 * lam_max, budget=40)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-12-17
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

from core.C03_logging_handler import get_logger, log_divider, log_stage_record
logger = get_logger(__name__)

from core.C05_error_handler import BudgetInfeasibleError, ConvergenceError, UsageError
from core.C06_validation_utils import validate_positive

from implementation.I02_problem_instances import (
    LassoInstance,
    LassoVariant,
    ScreeningReport,
    SolveOptions,
    SolverResult,
    WarmStart,
)
from implementation.I03_numeric_constants import setting
from implementation.screening.SC01_safe_lasso import ScreenOptions, lambda_max, screen
from implementation.solvers.SO01_lasso_solver import duality_gap_lasso, solve_lasso


def _validate_budget(budget: int, eps_f: int) -> Tuple[int, int]:
    if int(budget) != budget or budget < 0:
        raise UsageError(f"budget must be a non-negative integer, got {budget!r}")
    if int(eps_f) != eps_f or eps_f < 0:
        raise UsageError(f"eps_F must be a non-negative integer, got {eps_f!r}")
    return int(budget), int(eps_f)


# ====================================================================================================
# 3. BISECTION ON LAMBDA
# ----------------------------------------------------------------------------------------------------
def bisect_lambda(
    instance: LassoInstance,
    ws: WarmStart,
    budget: int,
    eps_f: int = 0,
    screen_opts: ScreenOptions | None = None,
) -> Tuple[float, ScreeningReport]:
    """
    Description:
        Bisection on lambda in (0, lambda0] for a screen keeping L_F <= M features with
        M - L_F <= eps_F.

    Args:
        instance (LassoInstance): Plain LASSO instance.
        ws (WarmStart): Warm start at lambda0 (upper end of the search).
        budget (int): M, the largest number of kept features allowed.
        eps_f (int): Acceptable slack below the budget.
        screen_opts (ScreenOptions | None): Passed through to screen().

    Returns:
        Tuple[float, ScreeningReport]: The accepted lambda and its report. When the window
        is never hit, the smallest tested lambda with L_F <= M.

    Raises:
        BudgetInfeasibleError: If no tested lambda keeps at most M features; carries the
            tested lambda with the fewest kept features.

    Notes:
        - Stops after `workflows.bisect_max_iter` probes or when the interval collapses.
    """
    budget, eps_f = _validate_budget(budget, eps_f)
    lower, upper = 0.0, ws.lambda0
    best: Tuple[float, ScreeningReport] | None = None
    fewest: Tuple[float, int] = (upper, instance.n_features + 1)

    for probe in range(int(setting("workflows", "bisect_max_iter"))):
        lam = 0.5 * (lower + upper)
        report = screen(instance, lam, ws, screen_opts)
        kept = report.kept_count
        logger.debug("bisect probe %s: lambda=%.9g kept=%s (budget %s)", probe + 1, lam, kept, budget)

        if kept < fewest[1]:
            fewest = (lam, kept)
        if kept <= budget:
            if best is None or lam < best[0]:
                best = (lam, report)
            if budget - kept <= eps_f:
                return lam, report
            upper = lam
        else:
            lower = lam

        if upper - lower <= 1e-12 * ws.lambda0:
            break

    if best is not None:
        return best
    raise BudgetInfeasibleError(
        f"no tested lambda <= {ws.lambda0:.9g} keeps at most {budget} features "
        f"(best: lambda={fewest[0]:.9g} keeps {fewest[1]})",
        best_lambda=fewest[0],
        best_kept=fewest[1],
    )


# ====================================================================================================
# 4. MEMORY-LIMITED SOLVE
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class MemoryLimitedResult:
    """
    Args:
        w (np.ndarray): Solution at lambda_d (length n).
        stages (List[Dict[str, Any]]): One record per reduced solve, in order.
        result (SolverResult): Full-problem objective and gap of w at lambda_d.
    """

    w: np.ndarray
    stages: List[Dict[str, Any]]
    result: SolverResult


def reduced_solve(
    instance: LassoInstance,
    lam: float,
    kept: np.ndarray,
    w_prev: np.ndarray,
    opts: SolveOptions,
) -> Tuple[np.ndarray, SolverResult]:
    """Solves on the kept columns only and lifts the solution back to length n."""
    reduced = LassoInstance(instance.X.select_columns(kept), instance.y)
    local_opts = replace(opts, warm_w=w_prev[kept])
    result = solve_lasso(reduced, lam, local_opts)
    w = np.zeros(instance.n_features)
    w[kept] = result.w
    return w, result


def solve_memory_limited(
    instance: LassoInstance,
    lambda_d: float,
    budget: int,
    eps_f: int = 0,
    opts: SolveOptions | None = None,
    screen_opts: ScreenOptions | None = None,
) -> MemoryLimitedResult:
    """
    Description:
        Solves the LASSO at lambda_d touching at most M feature columns per solve: each
        stage bisects lambda to the budget, solves the reduced problem, and warm-starts
        the next stage from that solution, until lambda_d itself fits the budget.

    Args:
        instance (LassoInstance): Plain LASSO instance.
        lambda_d (float): Target penalty > 0.
        budget (int): M, kept-feature budget per stage.
        eps_f (int): Bisection window.
        opts (SolveOptions | None): Reduced solver options.
        screen_opts (ScreenOptions | None): Passed through to screen().

    Returns:
        MemoryLimitedResult: w at lambda_d, stage records, full-problem certificate.

    Raises:
        UsageError: On a non-plain instance.
        BudgetInfeasibleError: If a stage cannot respect the budget (including at lambda_d).
        ConvergenceError: If `workflows.max_outer` stages pass without reaching lambda_d.
    """
    if instance.variant is not LassoVariant.PLAIN:
        raise UsageError("solve_memory_limited() needs a plain instance")
    lambda_d = validate_positive(lambda_d, "lambda_d")
    budget, eps_f = _validate_budget(budget, eps_f)
    opts = opts or SolveOptions()
    n = instance.n_features

    lam_max = lambda_max(instance.X, instance.y)
    w = np.zeros(n)
    stages: List[Dict[str, Any]] = []

    if lambda_d >= lam_max:
        logger.info("lambda_d %.6g >= lambda_max %.6g: w = 0", lambda_d, lam_max)
        final = SolverResult(
            w=w,
            objective=instance.objective(w, lambda_d),
            duality_gap=duality_gap_lasso(instance, lambda_d, w),
            iterations=0,
        )
        return MemoryLimitedResult(w, stages, final)

    ws = WarmStart.default(instance)
    stall = float(setting("workflows", "stall_factor"))
    total_iterations, total_updates = 0, 0
    log_divider(label=f"Memory-limited solve: lambda_d={lambda_d:.6g}, budget={budget}")

    for stage in range(1, int(setting("workflows", "max_outer")) + 1):
        start = time.perf_counter()
        target_report = screen(instance, lambda_d, ws, screen_opts)
        if target_report.kept_count <= budget:
            lam, report = lambda_d, target_report
        else:
            lam, report = bisect_lambda(instance, ws, budget, eps_f, screen_opts)
            if lam >= ws.lambda0 * (1.0 - 1e-12):
                lam = max(lambda_d, stall * ws.lambda0)
                report = screen(instance, lam, ws, screen_opts)
            if lam <= lambda_d:
                lam, report = lambda_d, target_report

        if report.kept_count > budget:
            raise BudgetInfeasibleError(
                f"stage {stage}: lambda={lam:.9g} keeps {report.kept_count} > budget {budget}",
                best_lambda=lam,
                best_kept=report.kept_count,
            )

        w, result = reduced_solve(instance, lam, report.kept, w, opts)
        total_iterations += result.iterations
        total_updates += result.coordinate_updates
        record = {
            "event": "memsolve_stage",
            "stage": stage,
            "lambda": lam,
            "lambda0": ws.lambda0,
            "kept": report.kept_count,
            "gap": result.duality_gap,
            "seconds": time.perf_counter() - start,
        }
        log_stage_record(record)
        stages.append(record)

        if lam == lambda_d:
            final = SolverResult(
                w=w,
                objective=instance.objective(w, lambda_d),
                duality_gap=duality_gap_lasso(instance, lambda_d, w),
                iterations=total_iterations,
                coordinate_updates=total_updates,
                converged=result.converged,
            )
            logger.info("Memory-limited solve finished in %s stage(s), full gap %.3g", stage, final.duality_gap)
            return MemoryLimitedResult(final.w, stages, final)

        ws = WarmStart.from_solution(instance, lam, w)

    raise ConvergenceError(f"lambda_d not reached within {len(stages)} stages")
