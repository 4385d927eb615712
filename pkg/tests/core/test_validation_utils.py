# ====================================================================================================
# test_validation_utils.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for core/C06_validation_utils.py
# ====================================================================================================

from __future__ import annotations

import numpy as np
import pytest
from core.C05_error_handler import DataError, UsageError
from core.C06_validation_utils import (
    load_report_schema,
    validate_directory_exists,
    validate_file_exists,
    validate_finite,
    validate_index,
    validate_labels,
    validate_length,
    validate_positive,
    validate_report_structure,
    validate_strictly_decreasing,
)


def _minimal_report(**fields):
    report = {
        "schema": 1,
        "command": "screen",
        "data": "d.svm",
        "n": 2,
        "m": 2,
        "seed": 42,
        "config": {},
        "timings": {},
        "task": "lasso",
        "lambda": 0.8,
        "lambda_scale": 1.0,
        "gamma_used": 0.48,
        "eliminated_count": 1,
        "kept_indices": [0],
    }
    report.update(fields)
    return report


class TestFileValidation:
    """Tests for validate_file_exists and validate_directory_exists."""

    @pytest.mark.unit
    def test_missing_file(self, temp_test_dir):
        """Test a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            validate_file_exists(temp_test_dir / "absent.svm")

    @pytest.mark.unit
    def test_directory_created(self, temp_test_dir):
        """Test create_if_missing builds the directory."""
        target = temp_test_dir / "a" / "b"
        assert validate_directory_exists(target, create_if_missing=True)
        assert target.is_dir()


class TestNumericValidation:
    """Tests for the numeric input checks."""

    @pytest.mark.unit
    def test_non_finite_rejected(self):
        """Test NaN and infinity raise DataError."""
        with pytest.raises(DataError, match="2 non-finite"):
            validate_finite(np.array([1.0, np.nan, np.inf]), "y")

    @pytest.mark.unit
    def test_length_mismatch(self):
        """Test a wrong length is a dimension mismatch."""
        with pytest.raises(DataError, match="dimension mismatch"):
            validate_length(np.zeros(3), 2, "w")

    @pytest.mark.unit
    def test_positive(self):
        """Test zero is accepted only with allow_zero."""
        assert validate_positive(0.0, "eps", allow_zero=True) == 0.0
        with pytest.raises(UsageError):
            validate_positive(0.0, "lambda")
        with pytest.raises(UsageError):
            validate_positive(float("nan"), "lambda")

    @pytest.mark.unit
    def test_labels(self):
        """Test foreign labels and single-class data are rejected."""
        assert validate_labels(np.array([1, -1])).dtype == np.float64
        with pytest.raises(DataError):
            validate_labels(np.array([1.0, 0.0]))
        with pytest.raises(DataError, match="single-class"):
            validate_labels(np.array([1.0, 1.0]))

    @pytest.mark.unit
    def test_strictly_decreasing(self):
        """Test equal or increasing neighbours are rejected."""
        assert validate_strictly_decreasing([0.8, 0.6]).tolist() == [0.8, 0.6]
        with pytest.raises(UsageError, match="strictly decreasing"):
            validate_strictly_decreasing([0.6, 0.6])
        with pytest.raises(UsageError, match="strictly decreasing"):
            validate_strictly_decreasing([0.5, 0.7])
        with pytest.raises(UsageError):
            validate_strictly_decreasing([])

    @pytest.mark.unit
    def test_index(self):
        """Test the index must lie in [0, upper)."""
        assert validate_index(1, 2) == 1
        with pytest.raises(DataError):
            validate_index(2, 2)


class TestReportStructure:
    """Tests for validate_report_structure against the checked-in schema."""

    @pytest.mark.unit
    def test_schema_loads(self):
        """Test the checked-in schema declares version 1."""
        assert load_report_schema()["schema_version"] == 1

    @pytest.mark.unit
    def test_valid_report(self):
        """Test a complete screen report passes."""
        assert validate_report_structure(_minimal_report())

    @pytest.mark.unit
    def test_missing_field(self):
        """Test a missing command field is reported."""
        report = _minimal_report()
        del report["gamma_used"]
        with pytest.raises(DataError, match="gamma_used"):
            validate_report_structure(report)

    @pytest.mark.unit
    def test_wrong_type(self):
        """Test a boolean is not accepted as an int."""
        with pytest.raises(DataError, match="eliminated_count"):
            validate_report_structure(_minimal_report(eliminated_count=True))

    @pytest.mark.unit
    def test_unsorted_indices(self):
        """Test kept_indices must be ascending."""
        with pytest.raises(DataError, match="sorted"):
            validate_report_structure(_minimal_report(kept_indices=[1, 0]))

    @pytest.mark.unit
    def test_wrong_version(self):
        """Test the schema version is checked."""
        with pytest.raises(DataError, match="schema version"):
            validate_report_structure(_minimal_report(schema=2))
