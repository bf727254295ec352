"""Tests for config file loading, precedence merging, run settings and presets."""

import json
import os
import tempfile

import pytest

from gan_duf.config import CONSTANTS, PRESETS, RunConfig, get_preset, prepare_output_dir
from gan_duf.config.config_file import load_config_file, merge_config
from gan_duf.config.settings import RESOLVED_CONFIG_NAME
from gan_duf.errors import ConfigError


class TestLoadConfigFile:
    """Tests for load_config_file function."""

    def test_loads_valid_config(self) -> None:
        """Test loading a valid JSON run-config file."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "run.json")
            config_data = {"steps": 100, "seed": 3}
            with open(config_path, "w", encoding="utf-8") as f:
                json.dump(config_data, f)

            result = load_config_file(config_path)

            assert result is not None
            assert result == config_data

    def test_returns_none_for_missing_file(self) -> None:
        """Test that missing config file returns None."""
        with tempfile.TemporaryDirectory() as tmpdir:
            result = load_config_file(os.path.join(tmpdir, "missing.json"))
            assert result is None

    def test_returns_none_for_invalid_json(self) -> None:
        """Test that invalid JSON returns None."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "run.json")
            with open(config_path, "w", encoding="utf-8") as f:
                f.write("{ invalid json }")

            result = load_config_file(config_path)
            assert result is None

    def test_returns_none_for_directory_instead_of_file(self) -> None:
        """Test that a directory named like the config returns None."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "run.json")
            os.makedirs(config_path)

            result = load_config_file(config_path)
            assert result is None

    def test_returns_none_for_non_object(self) -> None:
        """Test that a top-level JSON list is rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "run.json")
            with open(config_path, "w", encoding="utf-8") as f:
                json.dump([1, 2], f)

            assert load_config_file(config_path) is None

    def test_required_file_raises_with_path(self) -> None:
        """Test that a required config file that cannot be used raises ConfigError."""
        with tempfile.TemporaryDirectory() as tmpdir:
            missing = os.path.join(tmpdir, "missing.json")
            with pytest.raises(ConfigError, match="missing.json"):
                load_config_file(missing, required=True)

            config_path = os.path.join(tmpdir, "run.json")
            with open(config_path, "w", encoding="utf-8") as f:
                f.write("{ invalid json }")
            with pytest.raises(ConfigError, match="Invalid JSON"):
                load_config_file(config_path, required=True)

            with open(config_path, "w", encoding="utf-8") as f:
                json.dump([1, 2], f)
            with pytest.raises(ConfigError, match="not an object"):
                load_config_file(config_path, required=True)

    def test_loads_empty_config(self) -> None:
        """Test loading an empty but valid JSON config."""
        with tempfile.TemporaryDirectory() as tmpdir:
            config_path = os.path.join(tmpdir, "run.json")
            with open(config_path, "w", encoding="utf-8") as f:
                json.dump({}, f)

            result = load_config_file(config_path)

            assert result == {}


class TestMergeConfig:
    """Tests for flags > config file > defaults precedence."""

    def test_defaults_only(self) -> None:
        """Test that defaults pass through when nothing overrides them."""
        assert merge_config({"a": 1, "b": 2}, None, {}) == {"a": 1, "b": 2}

    def test_file_overrides_defaults(self) -> None:
        """Test that config-file values replace defaults."""
        assert merge_config({"a": 1, "b": 2}, {"b": 5}, {}) == {"a": 1, "b": 5}

    def test_flags_override_file(self) -> None:
        """Test that explicit flags win over the config file."""
        result = merge_config({"a": 1}, {"a": 5}, {"a": 9})
        assert result == {"a": 9}

    def test_none_flag_means_not_given(self) -> None:
        """Test that a None flag keeps the file value."""
        result = merge_config({"a": 1}, {"a": 5}, {"a": None})
        assert result == {"a": 5}

    def test_unknown_keys_ignored(self) -> None:
        """Test that keys missing from the defaults are dropped."""
        result = merge_config({"a": 1}, {"zzz": 3}, {"yyy": 4})
        assert result == {"a": 1}

    def test_defaults_not_mutated(self) -> None:
        """Test that the defaults dictionary is left untouched."""
        defaults = {"a": 1}
        merge_config(defaults, {"a": 2}, {})
        assert defaults == {"a": 1}


class TestRunConfig:
    """Tests for RunConfig and output directory handling."""

    def test_rejects_zero_threads(self) -> None:
        """Test that a thread cap below one is a configuration error."""
        with pytest.raises(ConfigError):
            RunConfig(command="train", threads=0)

    def test_writes_resolved_config(self) -> None:
        """Test that the resolved config lands beside the outputs."""
        with tempfile.TemporaryDirectory() as tmpdir:
            cfg = RunConfig(command="synth", seed=4, output_dir=tmpdir, params={"n": 3})
            path = cfg.write_resolved()

            assert os.path.basename(path) == RESOLVED_CONFIG_NAME
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
            assert data["seed"] == 4
            assert data["params"] == {"n": 3}

    def test_log_level_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that GAN_DUF_LOG_LEVEL sets the default log level."""
        monkeypatch.setenv("GAN_DUF_LOG_LEVEL", "debug")
        assert RunConfig(command="uq").log_level == "DEBUG"

    def test_refuses_non_empty_directory(self) -> None:
        """Test that a non-empty output directory needs --force."""
        with tempfile.TemporaryDirectory() as tmpdir:
            with open(os.path.join(tmpdir, "x.txt"), "w", encoding="utf-8") as f:
                f.write("x")
            with pytest.raises(ConfigError):
                prepare_output_dir(tmpdir, force=False)
            assert prepare_output_dir(tmpdir, force=True) == os.path.abspath(tmpdir)

    def test_creates_missing_directory(self) -> None:
        """Test that a missing output directory is created."""
        with tempfile.TemporaryDirectory() as tmpdir:
            target = os.path.join(tmpdir, "a", "b")
            prepare_output_dir(target, force=False)
            assert os.path.isdir(target)


class TestPresets:
    """Config-snapshot test pinning the full-scale protocol constants."""

    def test_airfoil_paper_protocol(self) -> None:
        """Test the full-scale airfoil preset."""
        p = get_preset("airfoil_paper")
        assert (p.n_nominal, p.m_fabricated) == (1528, 10)
        assert (p.parent_dim, p.child_dim, p.noise_dim) == (7, 5, 10)
        assert (p.steps, p.batch_size, p.learning_rate) == (20000, 32, 0.0001)
        assert (p.bo_init, p.bo_seq, p.mc_samples, p.tau) == (21, 119, 100, 0.05)
        assert (p.study_targets, p.study_fabrications, p.study_nominals) == (100, 100, 30)
        assert p.noise_std == 0.02

    def test_metasurface_paper_protocol(self) -> None:
        """Test the full-scale metasurface preset."""
        p = get_preset("metasurface_paper")
        assert (p.n_nominal, p.m_fabricated) == (1000, 10)
        assert (p.parent_dim, p.child_dim, p.noise_dim) == (5, 10, 10)
        assert (p.steps, p.batch_size, p.learning_rate) == (50000, 32, 0.0001)
        assert (p.bo_init, p.bo_seq, p.mc_samples, p.tau) == (15, 85, 20, 0.05)
        assert (p.noise_std, p.filter_std) == (1.0, 2.0)

    def test_airfoil_small_protocol(self) -> None:
        """Test the desk-scale airfoil preset."""
        p = get_preset("airfoil_small")
        assert (p.n_nominal, p.m_fabricated, p.steps) == (64, 5, 500)
        assert (p.bo_init, p.bo_seq, p.mc_samples) == (8, 12, 25)
        assert (p.study_targets, p.study_fabrications, p.study_nominals) == (10, 10, 3)

    def test_shared_constants(self) -> None:
        """Test constants shared by all presets."""
        assert CONSTANTS.FIT_RESTARTS_PER_DIM == 3
        assert CONSTANTS.PRIOR_SCALE == 0.5
        assert CONSTANTS.LAMBDA_INFO == 1.0
        assert set(PRESETS) == {
            "airfoil_paper",
            "airfoil_small",
            "metasurface_paper",
            "metasurface_small",
        }

    def test_unknown_preset(self) -> None:
        """Test that an unknown recipe name is a configuration error."""
        with pytest.raises(ConfigError, match="airfoil_small"):
            get_preset("airfoil_huge")

    def test_to_dict_is_json_serializable(self) -> None:
        """Test that presets serialize for resolved_config.json."""
        data = get_preset("metasurface_small").to_dict()
        assert json.loads(json.dumps(data))["study_kinds"] == ["fitting"]
