# ====================================================================================================
# conftest.py
# ----------------------------------------------------------------------------------------------------
# Pytest configuration and shared fixtures for the SafeScreen test suite.
# ====================================================================================================

from __future__ import annotations

import sys
from pathlib import Path
import numpy as np
import pytest

# Ensure project root is in sys.path
project_root = str(Path(__file__).resolve().parent.parent)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from core import C03_logging_handler, C04_config_loader
from implementation.I01_sparse_matrices import SparseColMatrix
from implementation.I02_problem_instances import LassoInstance
from implementation.data_io.IO01_dataset_loaders import make_synthetic_classification, make_synthetic_lasso


# ====================================================================================================
# FIXTURES - TEST DATA
# ====================================================================================================

@pytest.fixture
def orthonormal_instance() -> LassoInstance:
    """
    Returns the two-feature instance X = I, y = (1, 0): lambda_max = 1, rho = (1, 0.5).
    """
    return LassoInstance(SparseColMatrix.from_dense(np.eye(2)), np.array([1.0, 0.0]))


@pytest.fixture
def lasso_problem():
    """
    Returns a seeded sparse LASSO instance (m=40, n=60) and its ground truth.
    """
    return make_synthetic_lasso(40, 60, density=0.2, nnz_true=5, noise=0.1, seed=42)


@pytest.fixture
def lasso_instance(lasso_problem) -> LassoInstance:
    return lasso_problem[0]


@pytest.fixture
def svm_instance():
    """
    Returns a seeded sparse hinge-loss instance (m=30, n=20).
    """
    return make_synthetic_classification(30, 20, density=0.3, nnz_true=4, noise=0.1, seed=7, task="svm")


@pytest.fixture
def logreg_instance():
    """
    Returns a seeded sparse logistic instance (m=30, n=20).
    """
    return make_synthetic_classification(30, 20, density=0.3, nnz_true=4, noise=0.1, seed=7, task="logreg")


@pytest.fixture
def temp_test_dir(tmp_path: Path) -> Path:
    """
    Returns a temporary directory for file I/O tests.
    """
    test_dir = tmp_path / "test_data"
    test_dir.mkdir()
    return test_dir


# ====================================================================================================
# FIXTURES - ISOLATION
# ====================================================================================================

@pytest.fixture(autouse=True)
def isolated_runtime(tmp_path: Path, monkeypatch):
    """
    Gives every test an empty CONFIG, no thread cap and a private log directory.
    """
    monkeypatch.delenv("SAFESCREEN_THREADS", raising=False)
    monkeypatch.setattr(C03_logging_handler, "LOGS_DIR", tmp_path / "logs")
    C04_config_loader.CONFIG.clear()
    yield
    C04_config_loader.CONFIG.clear()
    C03_logging_handler.reset_logging()


# ====================================================================================================
# HOOKS
# ====================================================================================================

def pytest_configure(config):
    """
    Pytest configuration hook.
    """
    # Suppress bytecode generation during tests
    sys.dont_write_bytecode = True
