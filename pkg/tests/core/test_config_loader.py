# ====================================================================================================
# test_config_loader.py
# ----------------------------------------------------------------------------------------------------
# Unit tests for core/C04_config_loader.py and the tunable lookup in I03_numeric_constants.py
# ====================================================================================================

from __future__ import annotations

import json
import pytest
from core.C04_config_loader import (
    CONFIG,
    apply_overrides,
    config_snapshot,
    get_config,
    initialise_config,
    merge_dicts,
)
from implementation.I03_numeric_constants import REL_GUARD, setting


class TestInitialiseConfig:
    """Tests for initialise_config function."""

    @pytest.mark.unit
    def test_loads_checked_in_settings(self):
        """Test the repository defaults are loaded from config/."""
        initialise_config()
        assert get_config("solver", "tol") == pytest.approx(1e-9)
        assert get_config("thresholding", "alpha") == pytest.approx(2.0)
        assert get_config("cli", "seed") == 42

    @pytest.mark.unit
    def test_json_overrides_yaml(self, temp_test_dir):
        """Test settings.json is merged after the YAML files, key by key."""
        (temp_test_dir / "screening_settings.yaml").write_text("solver:\n  tol: 1.0e-6\n  max_iters: 50\n")
        (temp_test_dir / "settings.json").write_text(json.dumps({"solver": {"tol": 1e-4}}))
        initialise_config(temp_test_dir)
        assert get_config("solver", "tol") == pytest.approx(1e-4)
        assert get_config("solver", "max_iters") == 50

    @pytest.mark.unit
    def test_missing_directory_gives_empty_config(self, temp_test_dir):
        """Test a missing directory leaves CONFIG empty instead of raising."""
        result = initialise_config(temp_test_dir / "absent")
        assert result == {}

    @pytest.mark.unit
    def test_malformed_yaml_is_ignored(self, temp_test_dir):
        """Test an unparsable YAML file is logged and skipped."""
        (temp_test_dir / "screening_settings.yaml").write_text("solver: [unclosed\n")
        assert initialise_config(temp_test_dir) == {}


class TestOverrides:
    """Tests for apply_overrides, get_config and config_snapshot."""

    @pytest.mark.unit
    def test_apply_overrides_skips_none(self):
        """Test None values never replace existing settings."""
        apply_overrides({"parallel": {"threads": 4}})
        apply_overrides({"parallel": {"threads": None, "chunk_size": 8}})
        assert get_config("parallel", "threads") == 4
        assert get_config("parallel", "chunk_size") == 8

    @pytest.mark.unit
    def test_get_config_default(self):
        """Test the default is returned for missing sections and keys."""
        assert get_config("nowhere", "nothing", default=3) == 3

    @pytest.mark.unit
    def test_snapshot_is_independent(self):
        """Test mutating a snapshot does not touch CONFIG."""
        apply_overrides({"cli": {"seed": 7}})
        snapshot = config_snapshot()
        snapshot["cli"]["seed"] = 99
        assert CONFIG["cli"]["seed"] == 7

    @pytest.mark.unit
    def test_merge_dicts_recursive(self):
        """Test nested mappings are merged rather than replaced."""
        base = {"a": {"x": 1, "y": 2}}
        merge_dicts(base, {"a": {"y": 3}})
        assert base == {"a": {"x": 1, "y": 3}}


class TestSetting:
    """Tests for the setting() lookup with module defaults."""

    @pytest.mark.unit
    def test_falls_back_to_default(self):
        """Test an uninitialised CONFIG yields the module default."""
        assert setting("screening", "rel_guard") == REL_GUARD

    @pytest.mark.unit
    def test_config_value_wins(self):
        """Test a configured value replaces the default."""
        apply_overrides({"screening": {"rel_guard": 1e-6}})
        assert setting("screening", "rel_guard") == pytest.approx(1e-6)
