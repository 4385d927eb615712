# ====================================================================================================
# test_io_utils.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for core/C09_io_utils.py
# ====================================================================================================

from __future__ import annotations

import json
import pandas as pd
import pytest
from core.C09_io_utils import read_csv_file, read_json, save_dataframe, save_json


class TestJson:
    """Tests for read_json and save_json."""

    @pytest.mark.unit
    def test_floats_survive_exactly(self, temp_test_dir):
        """Test written floats read back bit-identical."""
        values = [0.1 + 0.2, 1 / 3, 2.0 ** -40]
        path = save_json({"values": values}, temp_test_dir / "out" / "v.json")
        assert read_json(path)["values"] == values

    @pytest.mark.unit
    def test_non_finite_refused(self, temp_test_dir):
        """Test NaN cannot be written into a report."""
        with pytest.raises(ValueError):
            save_json({"x": float("nan")}, temp_test_dir / "bad.json")

    @pytest.mark.unit
    def test_invalid_json(self, temp_test_dir):
        """Test malformed JSON raises JSONDecodeError."""
        path = temp_test_dir / "broken.json"
        path.write_text("{not json")
        with pytest.raises(json.JSONDecodeError):
            read_json(path)

    @pytest.mark.unit
    def test_no_overwrite_adds_timestamp(self, temp_test_dir):
        """Test overwrite=False keeps the existing file."""
        first = save_json({"a": 1}, temp_test_dir / "r.json")
        second = save_json({"a": 2}, temp_test_dir / "r.json", overwrite=False)
        assert first != second
        assert read_json(first) == {"a": 1}


class TestCsv:
    """Tests for read_csv_file and save_dataframe."""

    @pytest.mark.unit
    def test_round_trip(self, temp_test_dir):
        """Test a saved table reads back unchanged."""
        df = pd.DataFrame({"lambda": [0.8, 0.6], "kept": [1, 2]})
        path = save_dataframe(df, temp_test_dir / "table.csv")
        pd.testing.assert_frame_equal(read_csv_file(path), df)

    @pytest.mark.unit
    def test_missing_file(self, temp_test_dir):
        """Test a missing CSV raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            read_csv_file(temp_test_dir / "absent.csv")
