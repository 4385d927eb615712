# ====================================================================================================
# test_lasso_solver.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for implementation/solvers/SO01_lasso_solver.py
# ====================================================================================================

from __future__ import annotations

import numpy as np
import pytest
from core.C05_error_handler import UsageError
from implementation.I01_sparse_matrices import SparseColMatrix
from implementation.I02_problem_instances import LassoInstance, LassoVariant, SolveOptions
from implementation.screening.SC01_safe_lasso import lambda_max
from implementation.solvers.SO01_lasso_solver import (
    duality_gap_lasso,
    lasso_dual_point,
    solve_lasso,
    solve_lasso_variant,
)


def _kkt_violation(X: np.ndarray, y: np.ndarray, w: np.ndarray, lam: float) -> float:
    correlation = X.T @ (y - X @ w)
    support = w != 0
    off = np.max(np.abs(correlation[~support]) - lam, initial=0.0)
    on = np.max(np.abs(correlation[support] - lam * np.sign(w[support])), initial=0.0)
    return max(off, on)


class TestDualityGap:
    """Tests for duality_gap_lasso and lasso_dual_point."""

    @pytest.mark.unit
    def test_zero_at_lambda_max(self, orthonormal_instance):
        """Test w = 0 has zero gap at lambda >= lambda_max."""
        assert duality_gap_lasso(orthonormal_instance, 1.0, np.zeros(2)) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.unit
    def test_positive_away_from_optimum(self, orthonormal_instance):
        """Test a suboptimal point has a positive gap."""
        assert duality_gap_lasso(orthonormal_instance, 0.8, np.array([0.5, 0.1])) > 0.0

    @pytest.mark.unit
    def test_dual_point_feasible(self, lasso_instance):
        """Test the scaled residual is dual feasible."""
        lam = 0.3 * lambda_max(lasso_instance.X, lasso_instance.y)
        theta = lasso_dual_point(lasso_instance, lam, np.ones(lasso_instance.n_features))
        assert np.max(np.abs(lasso_instance.X.rmat_vec(theta))) <= lam * (1 + 1e-12)


class TestSolveLasso:
    """Tests for solve_lasso function."""

    @pytest.mark.unit
    def test_orthonormal_solution(self, orthonormal_instance):
        """Test lambda = 0.8 gives w = (0.2, 0)."""
        result = solve_lasso(orthonormal_instance, 0.8)
        assert result.w.tolist() == pytest.approx([0.2, 0.0])
        assert result.converged
        assert result.duality_gap <= 1e-9 * result.objective

    @pytest.mark.unit
    def test_kkt_conditions(self, lasso_instance):
        """Test optimality conditions hold at a tight solve."""
        X = lasso_instance.X.to_dense()
        lam = 0.2 * lambda_max(lasso_instance.X, lasso_instance.y)
        result = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-12))
        assert _kkt_violation(X, lasso_instance.y, result.w, lam) <= 1e-3 * lam
        assert result.coordinate_updates >= lasso_instance.n_features

    @pytest.mark.unit
    def test_warm_start_at_solution(self, lasso_instance):
        """Test starting at the optimum needs no sweeps."""
        lam = 0.4 * lambda_max(lasso_instance.X, lasso_instance.y)
        first = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-10))
        second = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-9, warm_w=first.w))
        assert second.iterations == 0
        assert second.coordinate_updates == 0

    @pytest.mark.unit
    def test_iteration_cap(self, lasso_instance):
        """Test the cap stops the solver and reports non-convergence."""
        lam = 0.05 * lambda_max(lasso_instance.X, lasso_instance.y)
        result = solve_lasso(lasso_instance, lam, SolveOptions(tol=1e-15, max_iters=1))
        assert result.iterations == 1
        assert not result.converged

    @pytest.mark.unit
    def test_zero_column_stays_zero(self):
        """Test an empty column never enters the support."""
        X = SparseColMatrix.from_dense(np.array([[1.0, 0.0], [1.0, 0.0]]))
        result = solve_lasso(LassoInstance(X, np.array([1.0, 2.0])), 0.5)
        assert result.w[1] == 0.0

    @pytest.mark.unit
    def test_requires_plain_instance(self, orthonormal_instance):
        """Test non-plain variants must go through solve_lasso_variant."""
        instance = LassoInstance(orthonormal_instance.X, orthonormal_instance.y, LassoVariant.INTERCEPT)
        with pytest.raises(UsageError):
            solve_lasso(instance, 0.5)


class TestSolveLassoVariant:
    """Tests for solve_lasso_variant function."""

    @pytest.mark.unit
    def test_intercept_matches_explicit_centring(self, lasso_instance):
        """Test the implicit centring agrees with a dense centred solve."""
        X = lasso_instance.X
        y = lasso_instance.y + 3.0
        dense = X.to_dense()
        instance = LassoInstance(X, y, LassoVariant.INTERCEPT)
        centred = LassoInstance(SparseColMatrix.from_dense(dense - dense.mean(axis=0)), y - y.mean())
        lam = 0.3 * lambda_max(centred.X, centred.y)

        result = solve_lasso_variant(instance, lam, SolveOptions(tol=1e-12))
        reference = solve_lasso(centred, lam, SolveOptions(tol=1e-12))
        assert np.allclose(result.w, reference.w, atol=1e-4)
        assert result.intercept == pytest.approx(y.mean() - dense.mean(axis=0) @ result.w)

    @pytest.mark.unit
    def test_elastic_kkt(self, lasso_instance):
        """Test x_k^T (y - X w) - eps w_k = lambda sign(w_k) on the support."""
        eps = 0.5
        instance = LassoInstance(lasso_instance.X, lasso_instance.y, LassoVariant.ELASTIC, eps)
        lam = 0.2 * lambda_max(lasso_instance.X, lasso_instance.y)
        w = solve_lasso_variant(instance, lam, SolveOptions(tol=1e-12)).w
        X = lasso_instance.X.to_dense()
        correlation = X.T @ (lasso_instance.y - X @ w) - eps * w
        support = w != 0
        assert np.allclose(correlation[support], lam * np.sign(w[support]), atol=1e-3 * lam)
        assert np.all(np.abs(correlation[~support]) <= lam * (1 + 1e-3))
