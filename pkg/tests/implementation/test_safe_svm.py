# ====================================================================================================
# test_safe_svm.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for implementation/screening/SC02_safe_svm.py
# ====================================================================================================

from __future__ import annotations

import math
import numpy as np
import pytest
from core.C05_error_handler import DataError, UsageError
from implementation.I01_sparse_matrices import SparseColMatrix
from implementation.I02_problem_instances import SvmInstance
from implementation.data_io.IO01_dataset_loaders import make_synthetic_classification
from implementation.screening.SC01_safe_lasso import ScreenOptions
from implementation.screening.SC02_safe_svm import (
    ClassSplitVector,
    f_interp,
    g_breakpoint,
    g_candidates_recursive,
    lambda_max_bar,
    p_hinge_neg,
    phi_pair,
    screen_svm,
)
from implementation.solvers.SO02_classifier_solvers import solve_hinge_lp


def _brute_g(z: np.ndarray) -> float:
    kappas = np.linspace(0.0, 1.0, 20001)
    return float(min(np.maximum(1.0 - k + k * z, 0.0).sum() for k in kappas))


def _direct_g_candidates(z: np.ndarray) -> np.ndarray:
    """G_j = (sum of the entries ranked ahead of z_j - rank * z_j) / (1 - z_j) at each negative z_j."""
    values = -np.sort(-z)
    out = []
    for rank, zj in enumerate(values):
        if zj < 0:
            out.append((values[:rank].sum() - rank * zj) / (1.0 - zj))
    return np.array(out)


def _enumerated_g(z: np.ndarray) -> float:
    """Convex piecewise-linear minimum over kappa, evaluated at every kink and both ends."""
    kappas = np.concatenate([[0.0, 1.0], 1.0 / (1.0 - z[z < 0])])
    return float(min(np.maximum(1.0 - k + k * z, 0.0).sum() for k in kappas))


def _enumerated_f(h: float, x: np.ndarray) -> float:
    """Dual form min over tau of h tau + sum (x_i - tau)_+, evaluated at every kink."""
    return float(min(h * tau + np.maximum(x - tau, 0.0).sum() for tau in x))


def _enumerated_phi(plus: np.ndarray, minus: np.ndarray) -> float:
    """min over nu of sum (x+ + nu)_+ + sum (x- - nu)_+, evaluated at every kink."""
    kinks = np.concatenate([-plus, minus])
    return float(min(np.maximum(plus + nu, 0.0).sum() + np.maximum(minus - nu, 0.0).sum() for nu in kinks))


def _enumerated_p_hinge_neg(gamma: float, plus: np.ndarray, minus: np.ndarray) -> float:
    """max over the shared class mass s in [gamma / 2, m_under] of the two top-s sums."""
    top_plus, top_minus = -np.sort(-plus), -np.sort(-minus)

    def top(values: np.ndarray, s: float) -> float:
        whole = int(np.floor(s))
        total = values[:whole].sum()
        if s > whole:
            total += (s - whole) * values[whole]
        return float(total)

    m_under = min(plus.size, minus.size)
    masses = [0.5 * gamma] + [float(s) for s in range(int(np.ceil(0.5 * gamma)), m_under + 1)]
    return max(top(top_plus, s) + top(top_minus, s) for s in masses)


class TestFInterp:
    """Tests for f_interp function."""

    @pytest.mark.unit
    @pytest.mark.parametrize("h, expected", [(1.5, 3.5), (2.0, 4.0), (0.0, 0.0), (1.0, 3.0)])
    def test_values(self, h, expected):
        """Test interpolated top-h sums of (3, 1)."""
        assert f_interp(h, np.array([3.0, 1.0])) == pytest.approx(expected)

    @pytest.mark.unit
    def test_outside_range(self):
        """Test h outside [0, p] is -inf."""
        assert f_interp(2.5, np.array([3.0, 1.0])) == -math.inf
        assert f_interp(-0.1, np.array([3.0, 1.0])) == -math.inf


class TestPairFunctions:
    """Tests for ClassSplitVector, phi_pair and p_hinge_neg."""

    @pytest.mark.unit
    def test_split_sorted_descending(self):
        """Test class entries are sorted descending."""
        split = ClassSplitVector.from_column(np.array([1.0, 5.0, -2.0, 3.0]), np.array([1.0, -1.0, 1.0, -1.0]))
        assert split.plus.tolist() == [1.0, -2.0]
        assert split.minus.tolist() == [5.0, 3.0]

    @pytest.mark.unit
    def test_phi_pair(self):
        """Test (2, 1) / (1, -3) gives 3 and (-1) / (-1) gives 0."""
        assert phi_pair(ClassSplitVector(np.array([2.0, 1.0]), np.array([1.0, -3.0]))) == pytest.approx(3.0)
        assert phi_pair(ClassSplitVector(np.array([-1.0]), np.array([-1.0]))) == 0.0

    @pytest.mark.unit
    def test_phi_pair_matches_grid(self):
        """Test the closed form against a dense search over nu."""
        rng = np.random.default_rng(3)
        plus, minus = rng.standard_normal(4), rng.standard_normal(6)
        nus = np.linspace(-8, 8, 32001)
        brute = min(np.maximum(plus + nu, 0).sum() + np.maximum(minus - nu, 0).sum() for nu in nus)
        assert phi_pair(ClassSplitVector(plus, minus)) == pytest.approx(brute, abs=5e-3)

    @pytest.mark.unit
    def test_empty_class(self):
        """Test an empty class cannot be paired."""
        with pytest.raises(DataError):
            phi_pair(ClassSplitVector(np.array([1.0]), np.array([])))

    @pytest.mark.unit
    def test_p_hinge_neg(self):
        """Test the documented values for one sample per class."""
        split = ClassSplitVector(np.array([1.0]), np.array([2.0]))
        assert p_hinge_neg(0.0, split) == pytest.approx(3.0)
        assert p_hinge_neg(2.0, split) == pytest.approx(3.0)
        assert p_hinge_neg(1.0, ClassSplitVector(np.array([1.0]), np.array([-2.0]))) == pytest.approx(-0.5)

    @pytest.mark.unit
    def test_p_hinge_neg_outside_range(self):
        """Test gamma beyond 2 m_under is +inf."""
        assert p_hinge_neg(2.5, ClassSplitVector(np.array([1.0]), np.array([2.0]))) == math.inf


class TestGBreakpoint:
    """Tests for g_breakpoint and its recursive candidates."""

    @pytest.mark.unit
    @pytest.mark.parametrize("z, expected", [((-1.0, -1.0), 0.0), ((1.0, 1.0), 2.0), ((2.0, -1.0), 1.5)])
    def test_values(self, z, expected):
        """Test the documented breakpoint values."""
        assert g_breakpoint(np.array(z)) == pytest.approx(expected)

    @pytest.mark.unit
    def test_empty(self):
        """Test an empty vector gives 0."""
        assert g_breakpoint(np.zeros(0)) == 0.0

    @pytest.mark.unit
    def test_matches_grid_search(self):
        """Test against a dense search over kappa."""
        rng = np.random.default_rng(11)
        for _ in range(5):
            z = rng.standard_normal(7) * 2.0
            assert g_breakpoint(z) == pytest.approx(_brute_g(z), abs=1e-3)

    @pytest.mark.unit
    @pytest.mark.parametrize("seed", range(20))
    def test_recursion_matches_direct(self, seed):
        """Test the first-order recursion reproduces the direct candidates to 1e-12."""
        rng = np.random.default_rng(seed)
        z = rng.standard_normal(int(rng.integers(1, 16)))
        z[rng.random(z.size) < 0.2] = 0.0
        assert np.allclose(g_candidates_recursive(z), _direct_g_candidates(z), rtol=0.0, atol=1e-12)

    @pytest.mark.unit
    def test_recursion_no_negatives(self):
        """Test a non-negative vector has no candidates."""
        assert g_candidates_recursive(np.array([1.0, 0.0])).size == 0


class TestPolyhedralOracles:
    """Closed forms against kink-enumeration oracles on 500 random small inputs each."""

    DRAWS = 500

    @pytest.mark.slow
    def test_f_interp(self):
        """Test f_interp against the dual enumeration over tau."""
        rng = np.random.default_rng(101)
        for draw in range(self.DRAWS):
            x = -np.sort(-rng.standard_normal(int(rng.integers(1, 10))))
            h = float(rng.uniform(0.0, x.size))
            if draw % 10 == 0:
                h = float(rng.integers(0, x.size + 1))
            assert f_interp(h, x) == pytest.approx(_enumerated_f(h, x), rel=1e-10, abs=1e-10), f"draw {draw}"

    @pytest.mark.slow
    def test_phi_pair(self):
        """Test phi_pair against enumeration over the kinks in nu."""
        rng = np.random.default_rng(102)
        for draw in range(self.DRAWS):
            plus = rng.standard_normal(int(rng.integers(1, 8)))
            minus = rng.standard_normal(int(rng.integers(1, 8)))
            expected = _enumerated_phi(plus, minus)
            assert phi_pair(ClassSplitVector(plus, minus)) == pytest.approx(expected, rel=1e-10, abs=1e-10), f"draw {draw}"

    @pytest.mark.slow
    def test_p_hinge_neg(self):
        """Test p_hinge_neg against enumeration over the shared class mass."""
        rng = np.random.default_rng(103)
        for draw in range(self.DRAWS):
            plus = rng.standard_normal(int(rng.integers(1, 8)))
            minus = rng.standard_normal(int(rng.integers(1, 8)))
            gamma = float(rng.uniform(0.0, 2.0 * min(plus.size, minus.size)))
            split = ClassSplitVector(plus, minus)
            expected = _enumerated_p_hinge_neg(gamma, plus, minus)
            assert p_hinge_neg(gamma, split) == pytest.approx(expected, rel=1e-10, abs=1e-10), f"draw {draw}"
            # The positive direction is the same search on the negated split.
            flipped = _enumerated_p_hinge_neg(gamma, -plus, -minus)
            assert p_hinge_neg(gamma, split.negated()) == pytest.approx(flipped, rel=1e-10, abs=1e-10), f"draw {draw}"

    @pytest.mark.slow
    def test_g_breakpoint(self):
        """Test g_breakpoint against enumeration over the kinks in kappa."""
        rng = np.random.default_rng(104)
        for draw in range(self.DRAWS):
            z = rng.standard_normal(int(rng.integers(1, 12))) * 2.0
            z[rng.random(z.size) < 0.1] = 0.0
            assert g_breakpoint(z) == pytest.approx(_enumerated_g(z), rel=1e-10, abs=1e-10), f"draw {draw}"


class TestScreenSvm:
    """Tests for lambda_max_bar and screen_svm."""

    @pytest.mark.unit
    def test_lambda_max_bar(self):
        """Test Z column (1, -1) with labels (+1, -1) gives 2."""
        instance = SvmInstance(SparseColMatrix.from_dense(np.array([[1.0], [-1.0]])), np.array([1.0, -1.0]))
        assert lambda_max_bar(instance) == pytest.approx(2.0)

    @pytest.mark.unit
    def test_zero_feature_eliminated(self):
        """Test an all-zero feature is removed at any lambda."""
        Z = SparseColMatrix.from_dense(np.array([[1.0, 0.0], [-1.0, 0.0], [0.5, 0.0], [-0.2, 0.0]]))
        instance = SvmInstance(Z, np.array([1.0, -1.0, 1.0, -1.0]))
        report = screen_svm(instance, 0.1 * lambda_max_bar(instance))
        assert 1 in report.eliminated.tolist()

    @pytest.mark.unit
    def test_above_lambda_max_bar(self, svm_instance):
        """Test every feature goes above lambda_max_bar."""
        report = screen_svm(svm_instance, 1.01 * lambda_max_bar(svm_instance))
        assert report.eliminated_count == svm_instance.n_features

    @pytest.mark.unit
    def test_bad_gamma0(self, svm_instance):
        """Test gamma0 outside (0, gamma_max] is refused."""
        lam = 0.5 * lambda_max_bar(svm_instance)
        with pytest.raises(UsageError):
            screen_svm(svm_instance, lam, gamma0=svm_instance.gamma_max + 1.0)

    @pytest.mark.unit
    def test_lambda_above_lambda0(self, svm_instance):
        """Test lambda between lambda0 and lambda_max_bar is refused."""
        bar = lambda_max_bar(svm_instance)
        with pytest.raises(UsageError):
            screen_svm(svm_instance, 0.8 * bar, lambda0=0.5 * bar, gamma0=1.0)

    @pytest.mark.unit
    def test_gamma_used_scales(self, svm_instance):
        """Test gamma_used = gamma0 lambda / lambda0."""
        bar = lambda_max_bar(svm_instance)
        report = screen_svm(svm_instance, 0.5 * bar)
        assert report.gamma_used == pytest.approx(0.5 * svm_instance.gamma_max)

    @pytest.mark.unit
    def test_threads_agree(self, svm_instance):
        """Test the result is independent of the worker count."""
        lam = 0.4 * lambda_max_bar(svm_instance)
        one = screen_svm(svm_instance, lam, opts=ScreenOptions(keep_certificates=True, max_workers=1))
        three = screen_svm(svm_instance, lam, opts=ScreenOptions(keep_certificates=True, max_workers=3))
        assert np.array_equal(one.certificates, three.certificates)


class TestScreenSvmSafety:
    """Randomised checks against exact LP solutions."""

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_no_false_elimination(self, seed):
        """Test eliminated features are zero in the LP optimum."""
        instance = make_synthetic_classification(24, 30, density=0.3, nnz_true=4, noise=0.2, seed=seed, task="svm")
        bar = lambda_max_bar(instance)
        for frac in (0.8, 0.5, 0.2):
            lam = frac * bar
            report = screen_svm(instance, lam)
            w = solve_hinge_lp(instance, lam).w
            assert np.all(np.abs(w[report.eliminated]) < 1e-7)
