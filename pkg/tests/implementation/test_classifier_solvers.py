# ====================================================================================================
# test_classifier_solvers.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for implementation/solvers/SO02_classifier_solvers.py
# ====================================================================================================

from __future__ import annotations

import math
import numpy as np
import pytest
from scipy.special import expit
from implementation.I02_problem_instances import SolveOptions
from implementation.screening.SC02_safe_svm import lambda_max_bar
from implementation.screening.SC03_safe_logreg import default_dual_point
from implementation.solvers.SO02_classifier_solvers import (
    best_hinge_intercept,
    duality_gap_logreg,
    hinge_dual_value,
    hinge_objective,
    logreg_objective,
    solve_hinge,
    solve_hinge_lp,
    solve_logreg,
)


class TestLogisticSolver:
    """Tests for solve_logreg and duality_gap_logreg."""

    @pytest.mark.unit
    def test_above_lambda0_intercept_only(self, logreg_instance):
        """Test w = 0 with the closed-form intercept above lambda0."""
        lambda0 = default_dual_point(logreg_instance).lambda0
        result = solve_logreg(logreg_instance, 1.1 * lambda0)
        assert not np.any(result.w)
        assert result.intercept == pytest.approx(math.log(logreg_instance.m_plus / logreg_instance.m_minus), abs=1e-8)

    @pytest.mark.unit
    def test_optimality(self, logreg_instance):
        """Test the gradient conditions at a tight solve."""
        lam = 0.3 * default_dual_point(logreg_instance).lambda0
        result = solve_logreg(logreg_instance, lam, SolveOptions(tol=1e-10))
        assert result.converged
        X = logreg_instance.screening_matrix
        theta = -expit(-(X.mat_vec(result.w) + logreg_instance.labels * result.intercept))
        assert np.max(np.abs(X.rmat_vec(theta))) <= lam * (1 + 1e-3)
        assert abs(float(logreg_instance.labels @ theta)) <= 1e-4

    @pytest.mark.unit
    def test_gap_bounds_suboptimality(self, logreg_instance):
        """Test the gap at a poor point exceeds its distance to the optimum."""
        lam = 0.3 * default_dual_point(logreg_instance).lambda0
        optimum = solve_logreg(logreg_instance, lam, SolveOptions(tol=1e-10)).objective
        w = np.full(logreg_instance.n_features, 0.1)
        gap, primal, v = duality_gap_logreg(logreg_instance, lam, w)
        assert primal == pytest.approx(logreg_objective(logreg_instance, lam, w, v))
        assert gap >= primal - optimum - 1e-9


class TestHingeSolvers:
    """Tests for the hinge LP, the smoothed solver and their helpers."""

    @pytest.mark.unit
    def test_lp_certified(self, svm_instance):
        """Test the LP solution has a negligible certified gap."""
        lam = 0.3 * lambda_max_bar(svm_instance)
        result = solve_hinge_lp(svm_instance, lam)
        assert result.duality_gap <= 1e-6 * max(result.objective, 1.0)

    @pytest.mark.unit
    def test_smoothed_matches_lp(self, svm_instance):
        """Test the smoothed solver reaches the LP objective."""
        lam = 0.3 * lambda_max_bar(svm_instance)
        exact = solve_hinge_lp(svm_instance, lam)
        approx = solve_hinge(svm_instance, lam, SolveOptions(tol=1e-4))
        assert exact.objective - 1e-6 <= approx.objective <= exact.objective * (1 + 1e-2)

    @pytest.mark.unit
    def test_weak_duality(self, svm_instance):
        """Test any projected dual candidate is below the optimal value."""
        lam = 0.3 * lambda_max_bar(svm_instance)
        optimum = solve_hinge_lp(svm_instance, lam).objective
        rng = np.random.default_rng(4)
        for _ in range(5):
            assert hinge_dual_value(svm_instance, lam, rng.random(svm_instance.n_rows)) <= optimum + 1e-9

    @pytest.mark.unit
    def test_best_intercept(self, svm_instance):
        """Test the breakpoint search beats every grid intercept."""
        rng = np.random.default_rng(6)
        w = 0.2 * rng.standard_normal(svm_instance.n_features)
        v = best_hinge_intercept(svm_instance, w)
        best = hinge_objective(svm_instance, 0.0, w, v)
        grid = [hinge_objective(svm_instance, 0.0, w, c) for c in np.linspace(-5, 5, 2001)]
        assert best <= min(grid) + 1e-12

    @pytest.mark.unit
    def test_above_lambda_max_bar(self, svm_instance):
        """Test w = 0 above lambda_max_bar."""
        result = solve_hinge(svm_instance, 1.1 * lambda_max_bar(svm_instance))
        assert not np.any(result.w)
