# ====================================================================================================
# test_report_writer.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for implementation/data_io/IO02_report_writer.py
# ====================================================================================================

from __future__ import annotations

import json
from enum import Enum
import numpy as np
import pandas as pd
import pytest
from core.C05_error_handler import DataError
from implementation.data_io.IO02_report_writer import (
    build_report,
    dense_solution,
    read_solution,
    sparse_solution,
    strip_timings,
    to_jsonable,
    write_bench_table,
    write_report,
)


class _Colour(Enum):
    RED = "red"


class TestJsonConversion:
    """Tests for to_jsonable and the solution encodings."""

    @pytest.mark.unit
    def test_numpy_and_special_values(self, tmp_path):
        """Test numpy types, enums, paths and non-finite floats convert to JSON types."""
        converted = to_jsonable({
            "a": np.array([1, 2]),
            "b": np.float64(0.5),
            "c": np.bool_(True),
            "d": (np.int64(3), float("nan")),
            "e": _Colour.RED,
            "f": tmp_path,
        })
        assert converted == {"a": [1, 2], "b": 0.5, "c": True, "d": [3, None], "e": "red", "f": str(tmp_path)}
        assert type(converted["a"][0]) is int

    @pytest.mark.unit
    def test_sparse_solution(self):
        """Test only nonzeros are listed, ascending."""
        assert sparse_solution(np.array([0.0, -1.5, 0.0, 2.0])) == [[1, -1.5], [3, 2.0]]

    @pytest.mark.unit
    def test_dense_solution(self):
        """Test pairs scatter into a dense vector."""
        assert dense_solution([[1, -1.5], [3, 2.0]], 4).tolist() == [0.0, -1.5, 0.0, 2.0]

    @pytest.mark.unit
    @pytest.mark.parametrize("pairs", [[[5, 1.0]], [[-1, 1.0]], [[1, 2, 3]], [1.0]])
    def test_dense_solution_errors(self, pairs):
        """Test out-of-range or malformed pairs are data errors."""
        with pytest.raises(DataError):
            dense_solution(pairs, 4)


class TestReports:
    """Tests for build_report, write_report, strip_timings and write_bench_table."""

    @pytest.mark.unit
    def test_build_report_header(self):
        """Test the common header fields are filled in."""
        report = build_report("screen", "data.svm", n=3, m=2, seed=9, timings={"screen": 0.1}, kept=[0, 2])
        assert report["schema"] == 1
        assert report["command"] == "screen"
        assert report["n"] == 3 and report["m"] == 2
        assert report["seed"] == 9
        assert report["timings"] == {"screen": 0.1}
        assert report["kept"] == [0, 2]

    @pytest.mark.unit
    def test_write_report_validates(self, temp_test_dir):
        """Test a report missing a header field is not written."""
        report = build_report("screen", "data.svm", n=3, m=2, seed=9)
        del report["n"]
        target = temp_test_dir / "r.json"
        with pytest.raises(DataError):
            write_report(report, target)
        assert not target.exists()

    @pytest.mark.unit
    def test_strip_timings(self):
        """Test wall-clock fields are removed at every depth."""
        report = {"a": 1, "timings": {"x": 1.0}, "records": [{"seconds": 0.2, "gap": 0.0}]}
        assert strip_timings(report) == {"a": 1, "records": [{"gap": 0.0}]}

    @pytest.mark.unit
    def test_bench_table(self, temp_test_dir):
        """Test the CSV lands next to the JSON report with one row per entry."""
        rows = [{"lambda": 0.5, "kept": 3}, {"lambda": 0.25, "kept": 5}]
        path = write_bench_table(rows, temp_test_dir / "bench.json")
        assert path == temp_test_dir / "bench.csv"
        df = pd.read_csv(path)
        assert df["kept"].tolist() == [3, 5]


class TestReadSolution:
    """Tests for read_solution function."""

    @pytest.mark.unit
    def test_sparse_with_lambda(self, temp_test_dir):
        """Test a sparse solution and its lambda are read."""
        path = temp_test_dir / "sol.json"
        path.write_text(json.dumps({"solution": [[1, 0.5]], "lambda": 0.3}), encoding="utf-8")
        w, lam = read_solution(path, 3)
        assert w.tolist() == [0.0, 0.5, 0.0]
        assert lam == 0.3

    @pytest.mark.unit
    def test_dense_without_lambda(self, temp_test_dir):
        """Test a dense 'w' entry without lambda."""
        path = temp_test_dir / "sol.json"
        path.write_text(json.dumps({"w": [1.0, 0.0]}), encoding="utf-8")
        w, lam = read_solution(path, 2)
        assert w.tolist() == [1.0, 0.0]
        assert lam is None

    @pytest.mark.unit
    def test_path_report_uses_last_record(self, temp_test_dir):
        """Test a path report yields its final step."""
        path = temp_test_dir / "path.json"
        records = [{"lambda": 0.8, "solution": [[0, 0.2]]}, {"lambda": 0.6, "solution": [[0, 0.4]]}]
        path.write_text(json.dumps({"records": records}), encoding="utf-8")
        w, lam = read_solution(path, 2)
        assert w.tolist() == [0.4, 0.0]
        assert lam == 0.6

    @pytest.mark.unit
    @pytest.mark.parametrize("document", [{"other": 1}, {"w": [1.0]}, [1, 2]])
    def test_malformed(self, temp_test_dir, document):
        """Test missing, mis-sized or non-object solutions are data errors."""
        path = temp_test_dir / "bad.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        with pytest.raises(DataError):
            read_solution(path, 2)
