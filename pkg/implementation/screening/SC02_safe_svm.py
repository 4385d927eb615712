# ====================================================================================================
# SC02_safe_svm.py
# ----------------------------------------------------------------------------------------------------
# SAFE feature elimination for l1-penalised hinge-loss classification.
#
# Purpose:
#   - Exact polyhedral subroutines on sorted class splits: f_interp, phi_pair, p_hinge_neg, g_breakpoint.
#   - Upper bound lambda_max_bar and the SAFE-SVM screening pass.
#
# Usage:
#   from implementation.screening.SC02_safe_svm import screen_svm, lambda_max_bar
#
#   report = screen_svm(instance, 0.9 * lambda_max_bar(instance))
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

from core.C05_error_handler import DataError, UsageError
from core.C06_validation_utils import validate_finite, validate_positive
from core.C18_parallel_executor import map_feature_blocks

from implementation.I02_problem_instances import ScreeningReport, SvmInstance
from implementation.I03_numeric_constants import setting
from implementation.screening.SC01_safe_lasso import ScreenOptions, elimination_mask


# ====================================================================================================
# 3. CLASS SPLITS
# ----------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ClassSplitVector:
    """
    Description:
        Entries of one screening column split by class, each sorted descending.

    Args:
        plus (np.ndarray): Entries at rows with label +1.
        minus (np.ndarray): Entries at rows with label -1.

    Notes:
        - Only sorted values enter the formulas, so tie order is irrelevant.
    """

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "plus", -np.sort(-validate_finite(self.plus, "plus"), kind="stable"))
        object.__setattr__(self, "minus", -np.sort(-validate_finite(self.minus, "minus"), kind="stable"))

    @classmethod
    def from_column(cls, x: np.ndarray, labels: np.ndarray) -> "ClassSplitVector":
        x_arr = np.asarray(x, dtype=np.float64)
        return cls(x_arr[labels > 0], x_arr[labels < 0])

    @property
    def m_under(self) -> int:
        return int(min(self.plus.size, self.minus.size))

    def pair_sums(self) -> np.ndarray:
        """xbar_j = x+_[j] + x-_[j], j = 1..m_under (descending)."""
        if self.m_under == 0:
            raise DataError("class split has an empty class")
        mu = self.m_under
        return self.plus[:mu] + self.minus[:mu]

    def negated(self) -> "ClassSplitVector":
        return ClassSplitVector(-self.plus, -self.minus)


# ====================================================================================================
# 4. POLYHEDRAL SUBROUTINES
# ----------------------------------------------------------------------------------------------------
def f_interp(h: float, x: np.ndarray) -> float:
    """
    Description:
        Sum of the h largest entries of x, interpolated linearly for fractional h.
        Equals max{u^T x : 0 <= u <= 1, 1^T u = h}.

    Args:
        h (float): Number of entries, 0 <= h <= p.
        x (np.ndarray): Entries sorted descending.

    Returns:
        float: The interpolated sum; -inf when h is outside [0, p].
    """
    values = np.asarray(x, dtype=np.float64)
    p = values.size
    if not 0.0 <= h <= p:
        return -math.inf
    whole = int(math.floor(h))
    total = float(values[:whole].sum())
    fraction = h - whole
    if fraction > 0.0:
        total += fraction * float(values[min(whole, p - 1)])
    return total


def phi_pair(split: ClassSplitVector) -> float:
    """
    Description:
        min over nu of sum (x+_i + nu)_+ + sum (x-_i - nu)_+, in closed form
        sum_{i <= m_under} (x+_[i] + x-_[i])_+.

    Raises:
        DataError: If either class is empty.
    """
    return float(np.maximum(split.pair_sums(), 0.0).sum())


def p_hinge_neg(gamma: float, split: ClassSplitVector) -> float:
    """
    Description:
        P_hi(gamma, -x) = max u^T x over 0 <= u <= 1 with equal class sums
        sum_{I+} u = sum_{I-} u >= gamma / 2.

    Args:
        gamma (float): Lower bound, 0 <= gamma <= 2 m_under.
        split (ClassSplitVector): Class split of x.

    Returns:
        float: The support value; +inf when gamma is outside [0, gamma_max].

    Notes:
        - P_hi(gamma, x) is obtained by passing split.negated().
    """
    xbar = split.pair_sums()
    mu = xbar.size
    if not 0.0 <= gamma <= 2.0 * mu:
        return math.inf

    half = 0.5 * gamma
    q = int(math.floor(half))
    fraction = half - q

    value = float(xbar[:q].sum())
    if q < mu:
        value -= fraction * max(-float(xbar[q]), 0.0)
    value += float(np.maximum(xbar[q:], 0.0).sum())
    return value


def g_candidates_recursive(z: np.ndarray) -> np.ndarray:
    """
    Description:
        Unshifted breakpoint values G_j computed at the negative entries of z (in
        descending order) through the first-order recursion
        G_{j+1} = ((1 - z_j) / (1 - z_{j+1})) G_j - j (z_{j+1} - z_j) / (1 - z_{j+1}).

    Args:
        z (np.ndarray): Input vector.

    Returns:
        np.ndarray: One value per negative entry.
    """
    values = -np.sort(-np.asarray(z, dtype=np.float64))
    first_negative = int(np.count_nonzero(values >= 0))
    if first_negative == values.size:
        return np.zeros(0)

    out = np.empty(values.size - first_negative)
    zj = values[first_negative]
    out[0] = (float(values[:first_negative].sum()) - first_negative * zj) / (1.0 - zj)
    for idx in range(first_negative + 1, values.size):
        rank = idx
        z_prev, z_next = values[idx - 1], values[idx]
        out[idx - first_negative] = (
            (1.0 - z_prev) / (1.0 - z_next) * out[idx - first_negative - 1]
            - rank * (z_next - z_prev) / (1.0 - z_next)
        )
    return out


def g_breakpoint(z: np.ndarray) -> float:
    """
    Description:
        G(z) = min over 0 <= kappa <= 1 of sum (1 - kappa + kappa z_i)_+.

    Args:
        z (np.ndarray): Input vector of length p (empty gives 0).

    Returns:
        float: min(p, S+, min_j G_j) where S+ is the sum of positive entries and the
        G_j are evaluated at kappa = 1 / (1 - z_j) for every negative z_j.
    """
    values = np.asarray(z, dtype=np.float64)
    positives = values[values > 0]
    if positives.size == 0:
        return 0.0
    best = min(float(values.size), float(positives.sum()))
    candidates = g_candidates_recursive(values)
    if candidates.size:
        best = min(best, float(candidates.min()))
    return best


# ====================================================================================================
# 5. LAMBDA_MAX_BAR AND THE SCREENING PASS
# ----------------------------------------------------------------------------------------------------
def _split_block(instance: SvmInstance, block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Dense descending-sorted class blocks (m_plus x b, m_minus x b) of screening columns."""
    dense = instance.screening_matrix.csc[:, block].toarray()
    plus = -np.sort(-dense[instance.plus_rows, :], axis=0)
    minus = -np.sort(-dense[instance.minus_rows, :], axis=0)
    return plus, minus


def _pair_sum_blocks(instance: SvmInstance, block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(xbar, xunder) per column: pair sums of x_k and of -x_k, shape (m_under, b)."""
    plus, minus = _split_block(instance, block)
    mu = instance.m_under
    xbar = plus[:mu] + minus[:mu]
    # Descending sort of -x is the reversed ascending sort of x, negated.
    xunder = -(plus[::-1][:mu] + minus[::-1][:mu])
    return xbar, xunder


def lambda_max_bar(instance: SvmInstance, max_workers: int | None = None) -> float:
    """
    Description:
        Upper bound on lambda_max: max_k max(sum_j xbar_kj, sum_j xunder_kj). Every
        feature passes the test at lambda > lambda_max_bar with (lambda0, gamma0) =
        (lambda_max_bar, gamma_max).

    Args:
        instance (SvmInstance): Classification data.
        max_workers (int | None): Worker count for the per-feature map.

    Returns:
        float: lambda_max_bar (0 for all-zero features).
    """
    values = _column_totals(instance, max_workers)
    return float(values.max()) if values.size else 0.0


def _column_totals(instance: SvmInstance, max_workers: int | None) -> np.ndarray:
    def totals(block: np.ndarray) -> np.ndarray:
        xbar, xunder = _pair_sum_blocks(instance, block)
        return np.maximum(xbar.sum(axis=0), xunder.sum(axis=0))

    return map_feature_blocks(totals, instance.n_features, max_workers=max_workers)


def screen_svm(
    instance: SvmInstance,
    lam: float,
    lambda0: float | None = None,
    gamma0: float | None = None,
    opts: ScreenOptions | None = None,
) -> ScreeningReport:
    """
    Description:
        SAFE-SVM test: feature k is removed when
        lambda > (2 lambda0 / gamma0) max(G(c xbar_k), G(c xunder_k)), c = gamma0 / (2 lambda0).

    Args:
        instance (SvmInstance): Classification data.
        lam (float): Target penalty > 0.
        lambda0 (float | None): Penalty with known optimal value; defaults to lambda_max_bar.
        gamma0 (float | None): Optimal primal value at lambda0; defaults to gamma_max.
        opts (ScreenOptions | None): Certificate retention and parallelism.

    Returns:
        ScreeningReport: gamma_used is gamma0 * lambda / lambda0.

    Raises:
        UsageError: If gamma0 is outside (0, gamma_max], or lambda > lambda0 while
            lambda <= lambda_max_bar.
    """
    lam = validate_positive(lam, "lambda")
    opts = opts or ScreenOptions()
    keep = setting("screening", "keep_certificates") if opts.keep_certificates is None else opts.keep_certificates

    totals = _column_totals(instance, opts.max_workers)
    lam_bar = float(totals.max()) if totals.size else 0.0

    lambda0 = lam_bar if lambda0 is None else validate_positive(lambda0, "lambda0")
    gamma0 = instance.gamma_max if gamma0 is None else float(gamma0)
    if not 0.0 < gamma0 <= instance.gamma_max * (1.0 + 1e-12):
        raise UsageError(f"gamma0 must lie in (0, {instance.gamma_max:g}], got {gamma0:.12g}")

    if lam > lambda0 or lam > lam_bar:
        if lam > lam_bar:
            logger.debug("lambda %.6g > lambda_max_bar %.6g: all features eliminated", lam, lam_bar)
            return ScreeningReport.from_mask(
                lam,
                np.ones(instance.n_features, dtype=bool),
                min(gamma0, instance.gamma_max),
                totals if keep else None,
            )
        raise UsageError(f"lambda {lam:.12g} exceeds lambda0 {lambda0:.12g}")

    scale = gamma0 / (2.0 * lambda0)

    def certify(block: np.ndarray) -> np.ndarray:
        xbar, xunder = _pair_sum_blocks(instance, block)
        out = np.empty(block.size)
        for j in range(block.size):
            out[j] = max(g_breakpoint(scale * xbar[:, j]), g_breakpoint(scale * xunder[:, j])) / scale
        return out

    certificates = map_feature_blocks(certify, instance.n_features, max_workers=opts.max_workers)
    mask = elimination_mask(lam, certificates)
    gamma_used = gamma0 * lam / lambda0

    logger.debug(
        "SAFE-SVM at lambda=%.6g (lambda0=%.6g, gamma0=%.6g): eliminated %s / %s",
        lam, lambda0, gamma0, int(mask.sum()), instance.n_features,
    )
    return ScreeningReport.from_mask(lam, mask, gamma_used, certificates if keep else None)
