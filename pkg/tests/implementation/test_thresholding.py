# ====================================================================================================
# test_thresholding.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for implementation/solvers/SO03_thresholding.py
# ====================================================================================================

from __future__ import annotations

import numpy as np
import pytest
from core.C05_error_handler import UsageError
from implementation.I02_problem_instances import SolveOptions, SolverResult
from implementation.screening.SC01_safe_lasso import lambda_max
from implementation.solvers.SO01_lasso_solver import solve_lasso
from implementation.solvers.SO03_thresholding import certified_eps, kkt_threshold, threshold_costs, tr_threshold


class TestCertifiedEps:
    """Tests for certified_eps function."""

    @pytest.mark.unit
    def test_value(self):
        """Test eps = gap / (objective - gap)."""
        result = SolverResult(w=np.zeros(1), objective=1.1, duality_gap=0.1, iterations=1)
        assert certified_eps(result) == pytest.approx(0.1)

    @pytest.mark.unit
    def test_exact(self):
        """Test a zero gap gives eps = 0."""
        assert certified_eps(SolverResult(w=np.zeros(1), objective=0.0, duality_gap=0.0, iterations=0)) == 0.0


class TestKktThreshold:
    """Tests for kkt_threshold function."""

    @pytest.mark.unit
    def test_zero_above_lambda_max(self, orthonormal_instance):
        """Test w = 0 stays zero for lambda > lambda_max / 0.9999."""
        assert not np.any(kkt_threshold(np.zeros(2), orthonormal_instance, 1.0 / 0.9999 + 1e-6))

    @pytest.mark.unit
    def test_removes_inactive_noise(self, orthonormal_instance):
        """Test a tiny entry off the support is zeroed while the support survives."""
        result = kkt_threshold(np.array([0.2, 1e-6]), orthonormal_instance, 0.8)
        assert result.tolist() == [0.2, 0.0]


class TestTrThreshold:
    """Tests for threshold_costs and tr_threshold."""

    @pytest.mark.unit
    def test_costs_match_direct_objective(self, lasso_instance):
        """Test C(tau) = objective change plus the removed l1 mass."""
        lam = 0.2 * lambda_max(lasso_instance.X, lasso_instance.y)
        w = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-6)).w
        thresholds, costs, groups = threshold_costs(w, lasso_instance)
        w_tau = w.copy()
        for tau, cost, group in zip(thresholds, costs, groups):
            w_tau[group] = 0.0
            expected = (
                lasso_instance.objective(w_tau, lam) - lasso_instance.objective(w, lam)
                + lam * (np.abs(w).sum() - np.abs(w_tau).sum())
            )
            assert cost == pytest.approx(expected, abs=1e-9)
            assert np.all(np.abs(w[group]) == tau)

    @pytest.mark.unit
    def test_degradation_bound(self, lasso_instance):
        """Test the thresholded objective stays within (1 + alpha eps) of the optimum bound."""
        lam = 0.1 * lambda_max(lasso_instance.X, lasso_instance.y)
        result = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-3))
        eps = certified_eps(result)
        alpha = 2.0
        w_tr = tr_threshold(result.w, lasso_instance, lam, eps, alpha)
        lower = result.objective - result.duality_gap
        assert lasso_instance.objective(w_tr, lam) <= (1 + alpha * eps) * lower + 1e-9 * result.objective
        assert np.count_nonzero(w_tr) <= np.count_nonzero(result.w)

    @pytest.mark.unit
    def test_exact_solution_unchanged(self, orthonormal_instance):
        """Test eps = 0 gives no budget and no change."""
        w = np.array([0.2, 0.0])
        assert tr_threshold(w, orthonormal_instance, 0.8, 0.0).tolist() == [0.2, 0.0]

    @pytest.mark.unit
    def test_alpha_must_exceed_one(self, orthonormal_instance):
        """Test alpha <= 1 is a usage error."""
        with pytest.raises(UsageError):
            tr_threshold(np.array([0.2, 0.0]), orthonormal_instance, 0.8, 0.1, alpha=1.0)
