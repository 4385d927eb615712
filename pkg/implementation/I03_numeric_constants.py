# ====================================================================================================
# I03_numeric_constants.py
# ----------------------------------------------------------------------------------------------------
# Numerical tolerances and fixed constants shared by the screening tests, solvers and workflows.
#
# Purpose:
#   - Hold every tolerance in one place with its default value.
#   - Let config/screening_settings.yaml override a default without touching code.
#
# Usage:
#   from implementation.I03_numeric_constants import setting, REL_GUARD
#
#   guard = setting("screening", "rel_guard")
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

from core.C04_config_loader import get_config


# ----------------------------------------------------------------------------------------------------
# SCREENING
# ----------------------------------------------------------------------------------------------------
# Elimination requires lambda - max(P(+x), P(-x)) > REL_GUARD * lambda.
REL_GUARD: float = 1e-10

# Radicands within -RADICAND_TOL * scale of zero are clamped; below that the geometry is invalid.
RADICAND_TOL: float = 1e-10

# Warm-start consistency (theta0 = X w0 - y) and dual feasibility tolerance, relative.
WARM_START_TOL: float = 1e-10

# Logistic gamma is pulled down by GAMMA_GUARD * m * log 2 before use.
GAMMA_GUARD: float = 1e-12

LOG2: float = math.log(2.0)


# ----------------------------------------------------------------------------------------------------
# LOGISTIC ONE-DIMENSIONAL SEARCHES
# ----------------------------------------------------------------------------------------------------
INNER_REL_TOL: float = 1e-10
INNER_MAX_ITER: int = 200
OUTER_MAX_DOUBLINGS: int = 60
BISECTION_MAX_ITER: int = 200


# ----------------------------------------------------------------------------------------------------
# SOLVERS AND THRESHOLDING
# ----------------------------------------------------------------------------------------------------
SOLVER_TOL: float = 1e-9
SOLVER_MAX_ITERS: int = 100_000
KKT_FACTOR: float = 0.9999
DEFAULT_TR_ALPHA: float = 2.0


# ----------------------------------------------------------------------------------------------------
# WORKFLOWS
# ----------------------------------------------------------------------------------------------------
BISECT_MAX_ITER: int = 200
MAX_OUTER: int = 1000
STALL_FACTOR: float = 0.9
RECERT_FACTOR: float = 10.0


# ----------------------------------------------------------------------------------------------------
# CONFIG KEY -> DEFAULT
# ----------------------------------------------------------------------------------------------------
DEFAULTS: Dict[Tuple[str, str], Any] = {
    ("screening", "rel_guard"): REL_GUARD,
    ("screening", "radicand_tol"): RADICAND_TOL,
    ("screening", "warm_start_tol"): WARM_START_TOL,
    ("screening", "gamma_guard"): GAMMA_GUARD,
    ("screening", "keep_certificates"): False,
    ("logreg_search", "inner_rel_tol"): INNER_REL_TOL,
    ("logreg_search", "inner_max_iter"): INNER_MAX_ITER,
    ("logreg_search", "outer_max_doublings"): OUTER_MAX_DOUBLINGS,
    ("logreg_search", "bisection_max_iter"): BISECTION_MAX_ITER,
    ("solver", "tol"): SOLVER_TOL,
    ("solver", "max_iters"): SOLVER_MAX_ITERS,
    ("thresholding", "kkt_factor"): KKT_FACTOR,
    ("thresholding", "alpha"): DEFAULT_TR_ALPHA,
    ("workflows", "bisect_max_iter"): BISECT_MAX_ITER,
    ("workflows", "max_outer"): MAX_OUTER,
    ("workflows", "stall_factor"): STALL_FACTOR,
    ("workflows", "recertify"): True,
    ("workflows", "recert_factor"): RECERT_FACTOR,
}


def setting(section: str, key: str) -> Any:
    """
    Description:
        Reads a tunable from CONFIG, falling back to the default declared above.

    Args:
        section (str): Config section.
        key (str): Key within the section.

    Returns:
        Any: Configured value, or the module default.

    Raises:
        KeyError: If (section, key) has no declared default.
    """
    return get_config(section, key, default=DEFAULTS[(section, key)])
