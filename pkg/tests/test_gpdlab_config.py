"""Tests for gpdlab configuration management."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from gpdlab.config import (
    _parse_toml,
    get_config_value,
    get_search_budget,
    list_config,
    load_config,
    load_suite_config,
    set_config_value,
)
from gpdlab.exceptions import ConfigError

# ---------------------------------------------------------------------------
# Tests: TOML parsing
# ---------------------------------------------------------------------------


class TestParseToml:
    """Tests for the minimal TOML parser."""

    def test_parses_quoted_and_bare_values(self) -> None:
        """Should accept both quoted and bare integers."""
        text = 'search_budget = "500"\nbang_bound = 3'
        assert _parse_toml(text) == {"search_budget": "500", "bang_bound": "3"}

    def test_ignores_comments_and_sections(self) -> None:
        text = "# header\n[suite]\ndefault_seed = 9\nno equals here"
        assert _parse_toml(text) == {"default_seed": "9"}

    def test_empty_string(self) -> None:
        assert _parse_toml("") == {}


# ---------------------------------------------------------------------------
# Tests: set_config_value / get_config_value
# ---------------------------------------------------------------------------


class TestSetGetConfig:
    """Tests for set_config_value and get_config_value."""

    def test_set_and_get_value(self, isolated_config: Path) -> None:
        """Should write and read back a config value."""
        set_config_value("bang_bound", "3")
        assert get_config_value("bang_bound") == "3"
        assert (isolated_config / "config.toml").exists()

    @pytest.mark.skipif(os.name == "nt", reason="no POSIX permissions")
    def test_config_file_is_owner_only(self, isolated_config: Path) -> None:
        set_config_value("default_seed", "5")
        mode = (isolated_config / "config.toml").stat().st_mode & 0o777
        assert mode == 0o600

    def test_set_overwrites_existing(self, isolated_config: Path) -> None:
        set_config_value("default_seed", "1")
        set_config_value("default_seed", "2")
        assert load_config() == {"default_seed": "2"}

    def test_unknown_key_raises(self, isolated_config: Path) -> None:
        """Should reject keys outside the known set."""
        with pytest.raises(ConfigError, match="Unknown config key"):
            set_config_value("openai_key", "x")

    def test_non_integer_value_raises(self, isolated_config: Path) -> None:
        with pytest.raises(ConfigError, match="integer"):
            set_config_value("bang_bound", "two")

    def test_non_positive_value_raises(self, isolated_config: Path) -> None:
        with pytest.raises(ConfigError, match="positive"):
            set_config_value("instance_count", "0")

    def test_seed_may_be_zero(self, isolated_config: Path) -> None:
        set_config_value("default_seed", "0")
        assert load_suite_config().seed == 0

    def test_missing_key_returns_none(self, isolated_config: Path) -> None:
        assert get_config_value("bang_bound") is None


# ---------------------------------------------------------------------------
# Tests: resolution order
# ---------------------------------------------------------------------------


class TestResolution:
    """Explicit value, then environment, then file, then default."""

    def test_defaults(self, isolated_config: Path) -> None:
        cfg = load_suite_config()
        assert (cfg.seed, cfg.bang_bound, cfg.instance_count) == (42, 3, 5)
        assert cfg.search_budget == 1_000_000

    def test_env_fallback_for_budget(self, isolated_config: Path) -> None:
        """Should read GPDLAB_BUDGET when the file has no budget."""
        with patch.dict(os.environ, {"GPDLAB_BUDGET": "77"}):
            assert get_search_budget() == 77

    def test_env_overrides_file(self, isolated_config: Path) -> None:
        """GPDLAB_BUDGET should win over a budget in the config file."""
        (isolated_config / "config.toml").write_text('search_budget = "500"\n')
        with patch.dict(os.environ, {"GPDLAB_BUDGET": "7"}):
            assert get_search_budget() == 7
            assert list_config()["search_budget"] == "7 (env: GPDLAB_BUDGET)"
        assert get_search_budget() == 500

    def test_explicit_beats_env(self, isolated_config: Path) -> None:
        with patch.dict(os.environ, {"GPDLAB_BUDGET": "7"}):
            assert get_search_budget(3) == 3

    def test_explicit_beats_everything(self, isolated_config: Path) -> None:
        set_config_value("search_budget", "10")
        assert get_search_budget(5) == 5

    def test_overrides_win(self, isolated_config: Path) -> None:
        set_config_value("bang_bound", "3")
        cfg = load_suite_config(bang_bound=1, seed=None, max_objects=2)
        assert cfg.bang_bound == 1
        assert cfg.seed == 42
        assert cfg.max_objects == 2

    def test_bad_env_value(self, isolated_config: Path) -> None:
        with patch.dict(os.environ, {"GPDLAB_BUDGET": "lots"}):
            with pytest.raises(ConfigError):
                get_search_budget()


# ---------------------------------------------------------------------------
# Tests: list_config
# ---------------------------------------------------------------------------


class TestListConfig:
    """Tests for list_config source annotations."""

    def test_all_defaults(self, isolated_config: Path) -> None:
        result = list_config()
        assert result["instance_count"] == "5 (default)"
        assert set(result) == {"search_budget", "default_seed", "bang_bound", "instance_count"}

    def test_sources(self, isolated_config: Path) -> None:
        """Should label file and environment values."""
        set_config_value("bang_bound", "4")
        with patch.dict(os.environ, {"GPDLAB_BUDGET": "99"}):
            result = list_config()
        assert result["bang_bound"] == "4 (config file)"
        assert result["search_budget"] == "99 (env: GPDLAB_BUDGET)"
