"""Tests for configuration loading and config file resolution."""

import json

import pytest

from nonsmooth_cert import constants
from nonsmooth_cert.config import Config, get_config, reset_config
from nonsmooth_cert.config_resolver import ConfigSource, resolve_config_file
from nonsmooth_cert.exceptions import ConfigurationError


def write_config(path, data):
    path.write_text(json.dumps(data))
    return path


class TestConfigDefaults:
    """Test built-in defaults."""

    def test_defaults(self):
        config = Config()

        assert config.pool_limit == constants.DEFAULT_POOL_LIMIT
        assert config.max_period == constants.DEFAULT_MAX_PERIOD
        assert config.max_extra_components == constants.DEFAULT_MAX_EXTRA_COMPONENTS
        assert config.sphere_weight == constants.DEFAULT_SPHERE_WEIGHT
        assert config.sweep_workers == constants.DEFAULT_SWEEP_WORKERS
        assert (config.prime_min, config.prime_max) == (5, 199)
        assert config.log_level == "WARNING"
        assert config.log_dir is None
        assert config.log_format == "text"

    def test_dot_notation_get(self):
        config = Config()

        assert config.get("search.pool_limit") == constants.DEFAULT_POOL_LIMIT
        assert config.get("search.missing", "fallback") == "fallback"
        assert config.get("search.pool_limit.deeper") is None


class TestConfigFile:
    """Test files merged over the defaults."""

    def test_partial_override(self, tmp_path):
        path = write_config(tmp_path / "c.json", {"search": {"pool_limit": 9}})
        config = Config(path)

        assert config.pool_limit == 9
        assert config.max_period == constants.DEFAULT_MAX_PERIOD

    def test_missing_file_uses_defaults(self, tmp_path):
        config = Config(tmp_path / "absent.json")

        assert config.pool_limit == constants.DEFAULT_POOL_LIMIT

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{oops")

        with pytest.raises(ConfigurationError):
            Config(path)

    def test_not_an_object(self, tmp_path):
        path = write_config(tmp_path / "c.json", [1, 2, 3])

        with pytest.raises(ConfigurationError):
            Config(path)

    def test_workers_capped(self, tmp_path):
        path = write_config(tmp_path / "c.json", {"sweep": {"workers": 10_000}})

        assert Config(path).sweep_workers == constants.MAX_SWEEP_WORKERS

    def test_log_dir_expanded(self, tmp_path):
        path = write_config(tmp_path / "c.json", {"logging": {"dir": str(tmp_path / "logs")}})

        assert Config(path).log_dir == tmp_path / "logs"

    def test_log_level_case_insensitive(self, tmp_path):
        path = write_config(tmp_path / "c.json", {"logging": {"level": "debug"}})

        assert Config(path).log_level == "DEBUG"

    @pytest.mark.parametrize("section,key,value,prop", [
        ("search", "pool_limit", 0, "pool_limit"),
        ("search", "pool_limit", "5", "pool_limit"),
        ("search", "max_period", True, "max_period"),
        ("search", "max_extra_components", -1, "max_extra_components"),
        ("search", "sphere_weight", [1, 2, 3], "sphere_weight"),
        ("sweep", "workers", 0, "sweep_workers"),
        ("logging", "level", "LOUD", "log_level"),
        ("logging", "format", "xml", "log_format"),
    ])
    def test_invalid_values(self, tmp_path, section, key, value, prop):
        path = write_config(tmp_path / "c.json", {section: {key: value}})
        config = Config(path)

        with pytest.raises(ConfigurationError):
            getattr(config, prop)


class TestGlobalConfig:
    """Test the process-wide instance."""

    def test_singleton(self, isolated_config):
        assert get_config() is get_config()

    def test_reset(self, isolated_config, tmp_path):
        first = get_config()
        reset_config()
        path = write_config(tmp_path / "c.json", {"search": {"pool_limit": 3}})

        second = get_config(path)

        assert second is not first
        assert second.pool_limit == 3


class TestConfigResolution:
    """Test CLI flag > env var > user file > defaults."""

    def test_defaults(self, isolated_config):
        resolution = resolve_config_file()

        assert resolution.path is None
        assert resolution.source == ConfigSource.DEFAULT
        assert resolution.log_message() == "Configuration: built-in defaults"

    def test_user_file(self, isolated_config):
        user_file = write_config(isolated_config / constants.USER_CONFIG_FILE_NAME, {})

        resolution = resolve_config_file()

        assert resolution.path == user_file
        assert resolution.source == ConfigSource.USER_CONFIG

    def test_env_beats_user_file(self, isolated_config, tmp_path, monkeypatch):
        write_config(isolated_config / constants.USER_CONFIG_FILE_NAME, {})
        env_file = write_config(tmp_path / "env.json", {})
        monkeypatch.setenv(constants.CONFIG_ENV_VAR, str(env_file))

        resolution = resolve_config_file()

        assert resolution.path == env_file.resolve()
        assert resolution.source == ConfigSource.ENV_VAR

    def test_flag_beats_env(self, isolated_config, tmp_path, monkeypatch):
        monkeypatch.setenv(constants.CONFIG_ENV_VAR, str(tmp_path / "env.json"))
        flag_file = tmp_path / "flag.json"

        resolution = resolve_config_file(cli_config=str(flag_file))

        assert resolution.path == flag_file.resolve()
        assert resolution.source == ConfigSource.CLI_FLAG
        assert str(flag_file.resolve()) in resolution.log_message()
