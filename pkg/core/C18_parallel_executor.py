# ====================================================================================================
# C18_parallel_executor.py
# ----------------------------------------------------------------------------------------------------
# Provides reusable utilities for concurrent and parallel task execution.
#
# Purpose:
#   - Execute independent tasks concurrently using threads or processes.
#   - Return results in task order so parallel runs are deterministic.
#   - Map a per-feature block function over feature indices (used by every screener).
#   - Resolve the worker count from SAFESCREEN_THREADS / configuration.
#
# Usage:
#   from core.C18_parallel_executor import (
#       run_in_parallel,
#       chunk_tasks,
#       map_feature_blocks,
#       resolve_worker_count,
#   )
#
# Example:
#   values = map_feature_blocks(lambda idx: evaluate(idx), n_features)
#
# ----------------------------------------------------------------------------------------------------
# Author:       Gerry Pidgeon
# Created:      2025-11-10
# Project:      SafeScreen v1.0
# ====================================================================================================


# ====================================================================================================
# 1. SYSTEM IMPORTS
# ----------------------------------------------------------------------------------------------------
# These imports (sys, pathlib.Path) are required to correctly initialise the project environment,
# ensure the core library can be imported safely (including C00_set_packages.py),
# and prevent project-local paths from overriding installed site-packages.
# ----------------------------------------------------------------------------------------------------

# --- Future behaviour & type system enhancements -----------------------------------------------------
from __future__ import annotations           # Future-proof type hinting (PEP 563 / PEP 649)

# --- Required for dynamic path handling and safe importing of core modules ---------------------------
import sys                                   # Python interpreter access (path, environment, runtime)
from pathlib import Path                     # Modern, object-oriented filesystem path handling

# --- Ensure project root DOES NOT override site-packages --------------------------------------------
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.append(project_root)

# --- Remove '' (current working directory) which can shadow installed packages -----------------------
if "" in sys.path:
    sys.path.remove("")

# --- Prevent creation of __pycache__ folders ---------------------------------------------------------
sys.dont_write_bytecode = True


# ====================================================================================================
# 2. PROJECT IMPORTS
# ----------------------------------------------------------------------------------------------------
# Bring in shared external and standard-library packages from the central import hub.
#
# CRITICAL ARCHITECTURE RULE:
#   ALL external (and commonly-used standard-library) packages must be imported exclusively via:
#       from core.C00_set_packages import *
#   No other script may import external libraries directly.
# ----------------------------------------------------------------------------------------------------
from core.C00_set_packages import *

# --- Initialise module-level logger -----------------------------------------------------------------
from core.C03_logging_handler import get_logger, log_exception, init_logging
logger = get_logger(__name__)

# --- Additional project-level imports (append below this line only) ----------------------------------
from core.C04_config_loader import get_config
from core.C05_error_handler import UsageError


# ====================================================================================================
# 3. WORKER COUNT
# ----------------------------------------------------------------------------------------------------
THREADS_ENV_VAR: str = "SAFESCREEN_THREADS"


def resolve_worker_count(requested: int | None = None) -> int:
    """
    Description:
        Determines how many workers a parallel map may use.

    Args:
        requested (int | None): Explicit request from the caller, if any.

    Returns:
        int: Worker count >= 1.

    Raises:
        UsageError: If SAFESCREEN_THREADS is set but is not a positive integer.

    Notes:
        - Precedence: explicit request, then configuration `parallel.threads`, then 1.
        - SAFESCREEN_THREADS caps whatever was chosen.
    """
    workers = requested or int(get_config("parallel", "threads", default=1) or 1)

    cap_text = os.environ.get(THREADS_ENV_VAR)
    if cap_text:
        try:
            cap = int(cap_text)
        except ValueError as exc:
            raise UsageError(f"{THREADS_ENV_VAR} must be a positive integer, got {cap_text!r}") from exc
        if cap < 1:
            raise UsageError(f"{THREADS_ENV_VAR} must be a positive integer, got {cap_text!r}")
        workers = min(workers, cap)

    return max(1, int(workers))


# ====================================================================================================
# 4. CORE PARALLEL EXECUTION UTILITIES
# ----------------------------------------------------------------------------------------------------
def run_in_parallel(
    func: Callable[[Any], Any],
    tasks: List[Any],
    mode: str = "thread",
    max_workers: int = 8,
    show_progress: bool = False,
) -> List[Any]:
    """
    Execute a list of tasks concurrently using threads or processes.

    Description:
        Unified wrapper around ThreadPoolExecutor and ProcessPoolExecutor.
        Results are returned in task order.

    Args:
        func (callable):
            Function to execute per task.
        tasks (List[Any]):
            Sequence of inputs to pass to func.
        mode (str):
            'thread' (default) or 'process'.
        max_workers (int):
            Maximum number of worker threads/processes.
        show_progress (bool):
            Whether to display a tqdm progress bar.

    Returns:
        List[Any]:
            One result per task, in the order of `tasks`.

    Raises:
        Exception: The first task failure is logged and re-raised; a screening
            decision can never be silently replaced by a placeholder.

    Notes:
        With max_workers == 1 the tasks run inline on the calling thread.
    """
    if not callable(func):
        raise UsageError("Provided function is not callable.")

    if max_workers <= 1 or len(tasks) <= 1:
        iterator = tqdm(tasks, desc="Executing tasks", unit="task") if show_progress else tasks
        return [func(task) for task in iterator]

    executor_class = ThreadPoolExecutor if mode == "thread" else ProcessPoolExecutor
    logger.debug("Executing %s tasks in %s mode (%s workers)", len(tasks), mode, max_workers)

    with executor_class(max_workers=max_workers) as executor:
        futures = [executor.submit(func, task) for task in tasks]
        iterator = tqdm(futures, desc="Executing tasks", unit="task") if show_progress else futures

        results: List[Any] = []
        for future in iterator:
            try:
                results.append(future.result())
            except Exception as exc:
                log_exception(exc, logger_instance=logger, context="run_in_parallel")
                raise

    return results


# ====================================================================================================
# 5. BATCH HELPERS
# ----------------------------------------------------------------------------------------------------
def chunk_tasks(task_list: Sequence[Any], chunk_size: int) -> List[Sequence[Any]]:
    """
    Split a sequence into evenly sized chunks.

    Args:
        task_list (Sequence[Any]):
            Original sequence of tasks.
        chunk_size (int):
            Number of tasks per chunk.

    Returns:
        List[Sequence[Any]]:
            List of chunks (the last one may be shorter).

    Raises:
        UsageError: If chunk_size <= 0.
    """
    if chunk_size <= 0:
        raise UsageError("chunk_size must be > 0.")

    return [task_list[i:i + chunk_size] for i in range(0, len(task_list), chunk_size)]


def map_feature_blocks(
    block_func: Callable[[np.ndarray], np.ndarray],
    n_features: int,
    max_workers: int | None = None,
    chunk_size: int | None = None,
    show_progress: bool = False,
) -> np.ndarray:
    """
    Description:
        Evaluates a per-feature function over all feature indices in contiguous blocks
        and concatenates the results in feature order.

    Args:
        block_func (Callable[[np.ndarray], np.ndarray]): Maps an index block to one
            float per index.
        n_features (int): Number of features n.
        max_workers (int | None): Worker count; resolved via resolve_worker_count() when None.
        chunk_size (int | None): Features per block. Defaults to `parallel.chunk_size`
            or an even split across workers.
        show_progress (bool): Whether to show a tqdm bar over blocks.

    Returns:
        np.ndarray: Float array of length n_features.

    Raises:
        Exception: Propagates the first block failure.

    Notes:
        - Block boundaries never change the per-feature values, so results are
          identical for every worker count.
    """
    if n_features == 0:
        return np.zeros(0, dtype=np.float64)

    workers = resolve_worker_count(max_workers)
    size = chunk_size or int(get_config("parallel", "chunk_size", default=0) or 0)
    if size <= 0:
        size = max(1, math.ceil(n_features / workers))

    blocks = chunk_tasks(np.arange(n_features), size)
    results = run_in_parallel(block_func, blocks, max_workers=workers, show_progress=show_progress)
    return np.concatenate([np.asarray(part, dtype=np.float64) for part in results])


# ====================================================================================================
# 6. MAIN EXECUTION (SELF-TEST)
# ----------------------------------------------------------------------------------------------------
if __name__ == "__main__":
    init_logging(enable_console=True)
    logger.info("Running C18_parallel_executor self-test...")

    squares = map_feature_blocks(lambda idx: idx.astype(float) ** 2, 10, max_workers=3, chunk_size=4)
    logger.info("Block-mapped squares: %s", squares)

    logger.info("C18_parallel_executor self-test complete.")
