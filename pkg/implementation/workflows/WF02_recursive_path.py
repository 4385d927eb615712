# ====================================================================================================
# WF02_recursive_path.py
# ----------------------------------------------------------------------------------------------------
# Regularisation path with recursive SAFE screening: each lambda is screened with the warm start
# from the previous solution, solved on the kept features only, and re-certified on the full problem.
#
# Usage:
#   from implementation.workflows.WF02_recursive_path import PathSpec, solve_path_recursive
#
#   path = PathSpec.from_grid("log:0.03:1:20", scale=lam_max)
#   outcome = solve_path_recursive(instance, path)
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

from core.C03_logging_handler import get_logger, log_stage_record
logger = get_logger(__name__)

from core.C05_error_handler import RecertificationError, UsageError
from core.C06_validation_utils import validate_strictly_decreasing

from implementation.I02_problem_instances import LassoInstance, LassoVariant, SolveOptions, WarmStart
from implementation.I03_numeric_constants import setting
from implementation.screening.SC01_safe_lasso import ScreenOptions, lambda_max, screen
from implementation.solvers.SO01_lasso_solver import duality_gap_lasso
from implementation.workflows.WF01_budget_workflows import reduced_solve


# ====================================================================================================
# 3. PATH TYPES
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class PathSpec:
    """
    Description:
        Strictly decreasing positive penalties with the solver options used at every step.

    Raises:
        UsageError: If the lambdas are empty, non-positive or not strictly decreasing.
    """

    lambdas: np.ndarray
    opts: SolveOptions = field(default_factory=SolveOptions)

    def __post_init__(self) -> None:
        lambdas = np.array(validate_strictly_decreasing(self.lambdas, "lambdas"), copy=True)
        lambdas.setflags(write=False)
        object.__setattr__(self, "lambdas", lambdas)

    @classmethod
    def from_grid(cls, grid: str, scale: float = 1.0, opts: SolveOptions | None = None) -> "PathSpec":
        """
        Parses "log:lo:hi:count" into count log-spaced values from hi down to lo, times scale.
        """
        parts = grid.split(":")
        if len(parts) != 4 or parts[0] != "log":
            raise UsageError(f"grid must look like log:lo:hi:count, got {grid!r}")
        try:
            lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise UsageError(f"grid must look like log:lo:hi:count, got {grid!r}") from exc
        if not 0.0 < lo < hi or count < 1:
            raise UsageError(f"grid needs 0 < lo < hi and count >= 1, got {grid!r}")
        values = np.geomspace(hi, lo, count) * scale if count > 1 else np.array([hi * scale])
        return cls(values, opts or SolveOptions())

    @classmethod
    def from_text(cls, text: str, opts: SolveOptions | None = None) -> "PathSpec":
        """Parses a comma-separated list "a,b,c"."""
        try:
            values = [float(part) for part in text.split(",") if part.strip()]
        except ValueError as exc:
            raise UsageError(f"lambdas must be comma-separated numbers, got {text!r}") from exc
        return cls(np.array(values), opts or SolveOptions())


@dataclass(frozen=True)
class PathRecord:
    lam: float
    kept_count: int
    indices: np.ndarray
    values: np.ndarray
    gap: float
    full_gap: float
    seconds: float
    coordinate_updates: int

    def dense(self, n: int) -> np.ndarray:
        w = np.zeros(n)
        w[self.indices] = self.values
        return w

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": float(self.lam),
            "kept_count": int(self.kept_count),
            "solution": [[int(i), float(v)] for i, v in zip(self.indices, self.values)],
            "gap": float(self.gap),
            "full_gap": float(self.full_gap),
            "seconds": float(self.seconds),
            "coordinate_updates": int(self.coordinate_updates),
        }


@dataclass(frozen=True)
class PathResult:
    records: List[PathRecord]
    n_features: int

    @property
    def total_updates(self) -> int:
        return sum(r.coordinate_updates for r in self.records)

    def solutions(self) -> np.ndarray:
        """(len(path), n) dense solutions."""
        return np.vstack([r.dense(self.n_features) for r in self.records]) if self.records else np.zeros((0, self.n_features))


# ====================================================================================================
# 4. RECURSIVE PATH
# ----------------------------------------------------------------------------------------------------
def solve_path_recursive(
    instance: LassoInstance,
    path: PathSpec,
    screen_opts: ScreenOptions | None = None,
    recertify: bool | None = None,
    use_screening: bool = True,
) -> PathResult:
    """
    Description:
        For each lambda in order: screen with the warm start from the previous
        solution, solve the reduced problem, then evaluate the duality gap of the lifted
        solution on the full problem.

    Args:
        instance (LassoInstance): Plain LASSO instance.
        path (PathSpec): Decreasing lambdas and solver options.
        screen_opts (ScreenOptions | None): Passed through to screen().
        recertify (bool | None): Check the full gap at every step; `workflows.recertify` when None.
        use_screening (bool): False solves every step on all features (baseline).

    Returns:
        PathResult: One record per lambda, ordered as the path.

    Raises:
        RecertificationError: If a full gap exceeds recert_factor * tol * objective,
            which means a feature was wrongly eliminated.
    """
    if instance.variant is not LassoVariant.PLAIN:
        raise UsageError("solve_path_recursive() needs a plain instance")
    recertify = bool(setting("workflows", "recertify")) if recertify is None else recertify
    factor = float(setting("workflows", "recert_factor"))
    opts = path.opts
    n = instance.n_features

    lam_max = lambda_max(instance.X, instance.y)
    ws = WarmStart.default(instance)
    w = np.zeros(n)
    records: List[PathRecord] = []

    for step, lam in enumerate(path.lambdas, start=1):
        lam = float(lam)
        start = time.perf_counter()

        if lam >= lam_max:
            w = np.zeros(n)
            kept = np.zeros(0, dtype=np.int64)
            gap, updates = duality_gap_lasso(instance, lam, w), 0
        else:
            kept = screen(instance, lam, ws, screen_opts).kept if use_screening else np.arange(n)
            w, result = reduced_solve(instance, lam, kept, w, opts)
            gap, updates = result.duality_gap, result.coordinate_updates

        full_gap = duality_gap_lasso(instance, lam, w) if (recertify or lam >= lam_max) else gap
        objective = instance.objective(w, lam)
        if recertify and full_gap > factor * opts.tol * max(objective, 1e-300):
            raise RecertificationError(
                f"lambda={lam:.9g}: full-problem gap {full_gap:.3g} exceeds "
                f"{factor:g} x tol x objective ({objective:.6g})"
            )

        support = np.flatnonzero(w)
        record = PathRecord(
            lam=lam,
            kept_count=int(kept.size),
            indices=support,
            values=w[support],
            gap=gap,
            full_gap=full_gap,
            seconds=time.perf_counter() - start,
            coordinate_updates=updates,
        )
        records.append(record)
        log_stage_record({
            "event": "path_step",
            "step": step,
            "lambda": lam,
            "kept": record.kept_count,
            "gap": gap,
            "full_gap": full_gap,
            "seconds": record.seconds,
        })

        if lam < lam_max:
            ws = WarmStart.from_solution(instance, lam, w)

    return PathResult(records, n)
