# ====================================================================================================
# test_screening_guarantees.py
# ----------------------------------------------------------------------------------------------------
# End-to-end guarantees at full scale: LASSO safety sweeps, path and memory-limited equivalence
# with a full solve, and the thresholding degradation bound.
# ====================================================================================================

from __future__ import annotations

import numpy as np
import pytest
from implementation.I02_problem_instances import SolveOptions, WarmStart
from implementation.data_io.IO01_dataset_loaders import make_synthetic_lasso
from implementation.screening.SC01_safe_lasso import lambda_max, screen
from implementation.solvers.SO01_lasso_solver import solve_lasso
from implementation.solvers.SO03_thresholding import certified_eps, tr_threshold
from implementation.workflows.WF01_budget_workflows import solve_memory_limited
from implementation.workflows.WF02_recursive_path import PathSpec, solve_path_recursive

TIGHT = SolveOptions(tol=1e-12)


@pytest.fixture(scope="module")
def acceptance_instance():
    """Seeded (m, n) = (50, 400) LASSO instance."""
    instance, _ = make_synthetic_lasso(50, 400, seed=0)
    return instance


# ====================================================================================================
# SAFETY
# ====================================================================================================

class TestLassoSafetySweep:
    """Eliminated features are zero at the optimum over 200 random instances."""

    FRACTIONS = (0.95, 0.8, 0.5, 0.3)

    @pytest.mark.integration
    @pytest.mark.slow
    @pytest.mark.parametrize("block", range(10))
    def test_no_false_elimination(self, block):
        """Test default and warm-started screens at 0.95, 0.8, 0.5 and 0.3 lambda_max (20 instances per block)."""
        for seed in range(20 * block, 20 * block + 20):
            rng = np.random.default_rng(seed)
            m, n = int(rng.integers(10, 101)), int(rng.integers(10, 201))
            density = 1.0 if seed % 2 else float(rng.uniform(0.05, 0.3))
            instance, _ = make_synthetic_lasso(m, n, density=density, nnz_true=min(5, n), noise=0.1, seed=seed)
            lam_max = lambda_max(instance.X, instance.y)
            if lam_max == 0.0:
                continue

            warm = WarmStart.default(instance)
            for frac in self.FRACTIONS:
                lam = frac * lam_max
                result = solve_lasso(instance, lam, SolveOptions(tol=1e-9, max_iters=200000))
                w = result.w
                for report in (screen(instance, lam), screen(instance, lam, warm)):
                    violations = np.abs(w[report.eliminated]) > 1e-6
                    assert not np.any(violations), f"seed {seed} frac {frac}: {report.eliminated[violations]}"
                warm = WarmStart.from_solution(instance, lam, w)


# ====================================================================================================
# WORKFLOWS
# ====================================================================================================

class TestWorkflowEquivalence:
    """Screened workflows reproduce a full solve on the (50, 400) instance."""

    @pytest.mark.integration
    @pytest.mark.slow
    def test_recursive_path_matches_full_solves(self, acceptance_instance):
        """Test 20 log-spaced lambdas in [0.03, 1] lambda_max agree to 1e-6 and screening does less work."""
        scale = lambda_max(acceptance_instance.X, acceptance_instance.y)
        path = PathSpec.from_grid("log:0.03:1:20", scale=scale, opts=TIGHT)
        screened = solve_path_recursive(acceptance_instance, path)
        baseline = solve_path_recursive(acceptance_instance, path, use_screening=False)

        assert len(screened.records) == 20
        assert np.max(np.abs(screened.solutions() - baseline.solutions())) <= 1e-6
        assert screened.total_updates < baseline.total_updates
        assert min(r.kept_count for r in screened.records) < acceptance_instance.n_features

    @pytest.mark.integration
    @pytest.mark.slow
    def test_memory_limited_matches_full_solve(self, acceptance_instance):
        """Test M = 40 at lambda_d = 0.3 lambda_max agrees to 1e-6 with every stage within budget."""
        budget = 40
        lam = 0.3 * lambda_max(acceptance_instance.X, acceptance_instance.y)
        outcome = solve_memory_limited(acceptance_instance, lam, budget, opts=TIGHT)
        reference = solve_lasso(acceptance_instance, lam, TIGHT)

        assert outcome.stages
        assert all(stage["kept"] <= budget for stage in outcome.stages)
        assert outcome.stages[-1]["lambda"] == lam
        assert np.max(np.abs(outcome.w - reference.w)) <= 1e-6


# ====================================================================================================
# THRESHOLDING
# ====================================================================================================

@pytest.fixture(scope="module")
def threshold_cases():
    """
    50 instances solved at 0.1 lambda_max: a tight reference objective and, for each target eps,
    an inexact solution whose certified accuracy is at most that eps.
    """
    cases = []
    for seed in range(50):
        instance, _ = make_synthetic_lasso(30, 60, density=0.3, nnz_true=6, noise=0.1, seed=1000 + seed)
        lam = 0.1 * lambda_max(instance.X, instance.y)
        reference = solve_lasso(instance, lam, SolveOptions(tol=1e-10, max_iters=200000))
        inexact = {eps: solve_lasso(instance, lam, SolveOptions(tol=0.5 * eps, max_iters=200000)) for eps in (1e-4, 1e-8)}
        cases.append((instance, lam, reference, inexact))
    return cases


class TestThresholdingGuarantee:
    """TR(alpha) never pushes the objective above (1 + alpha eps) phi(lambda)."""

    @pytest.mark.integration
    @pytest.mark.slow
    @pytest.mark.parametrize("eps", [1e-4, 1e-8])
    @pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0, 4.0])
    def test_degradation_bound(self, threshold_cases, alpha, eps):
        """Test the bound on 50 instances for each (alpha, eps)."""
        for index, (instance, lam, reference, inexact) in enumerate(threshold_cases):
            result = inexact[eps]
            assert result.converged
            assert certified_eps(result) <= eps

            w_tr = tr_threshold(result.w, instance, lam, eps, alpha)
            bound = (1.0 + alpha * eps) * reference.objective
            assert instance.objective(w_tr, lam) <= bound + 1e-12 * reference.objective, f"instance {index}"
            assert np.count_nonzero(w_tr) <= np.count_nonzero(result.w)
