"""Configuration management."""

import copy
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import ConfigurationError
from nonsmooth_cert.utils.file_ops import safe_read_json


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    """Application configuration manager."""

    def __init__(self, config_file: Optional[Path] = None):
        """
        Initialize configuration.

        Args:
            config_file: Path to a JSON config file; built-in defaults when None
        """
        self.config_file = Path(config_file) if config_file else None
        self._config: Dict[str, Any] = {}
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from file merged over the defaults."""
        try:
            loaded = safe_read_json(self.config_file, {})
        except ValueError as e:
            raise ConfigurationError(str(e))

        if not isinstance(loaded, dict):
            raise ConfigurationError(
                f"Config file {self.config_file} must hold a JSON object"
            )

        self._config = _deep_merge(self._get_default_config(), loaded)

    def _get_default_config(self) -> Dict[str, Any]:
        """Get default configuration."""
        return {
            "search": {
                "pool_limit": constants.DEFAULT_POOL_LIMIT,
                "max_period": constants.DEFAULT_MAX_PERIOD,
                "max_extra_components": constants.DEFAULT_MAX_EXTRA_COMPONENTS,
                "sphere_weight": list(constants.DEFAULT_SPHERE_WEIGHT),
            },
            "sweep": {
                "workers": constants.DEFAULT_SWEEP_WORKERS,
                "prime_min": constants.DEFAULT_PRIME_MIN,
                "prime_max": constants.DEFAULT_PRIME_MAX,
            },
            "logging": {
                "level": constants.DEFAULT_LOG_LEVEL,
                "dir": None,
                "format": constants.DEFAULT_LOG_FORMAT,
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation key.

        Args:
            key: Configuration key (e.g., "search.pool_limit")
            default: Default value if key not found

        Returns:
            Configuration value
        """
        keys = key.split('.')
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def _get_int(self, key: str, default: int, minimum: int) -> int:
        value = self.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise ConfigurationError(
                f"Config value {key}={value!r} must be an integer >= {minimum}"
            )
        return value

    @property
    def pool_limit(self) -> int:
        """Get the bound on weight entries explored by the bounded search."""
        return self._get_int("search.pool_limit", constants.DEFAULT_POOL_LIMIT, 1)

    @property
    def max_period(self) -> int:
        """Get the longest periodic weight pattern tried by the bounded search."""
        return self._get_int("search.max_period", constants.DEFAULT_MAX_PERIOD, 1)

    @property
    def max_extra_components(self) -> int:
        """Get how far past the minimal decomposition the bounded search goes."""
        return self._get_int(
            "search.max_extra_components", constants.DEFAULT_MAX_EXTRA_COMPONENTS, 0
        )

    @property
    def sphere_weight(self) -> Tuple[int, int]:
        """Get the weight used for free S4 components."""
        value = self.get("search.sphere_weight", list(constants.DEFAULT_SPHERE_WEIGHT))
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
        ):
            raise ConfigurationError(
                f"Config value search.sphere_weight={value!r} must be two integers"
            )
        return (value[0], value[1])

    @property
    def sweep_workers(self) -> int:
        """Get the number of sweep worker threads."""
        workers = self._get_int("sweep.workers", constants.DEFAULT_SWEEP_WORKERS, 1)
        return min(workers, constants.MAX_SWEEP_WORKERS)

    @property
    def prime_min(self) -> int:
        """Get the default lower end of a prime sweep."""
        return self._get_int("sweep.prime_min", constants.DEFAULT_PRIME_MIN, 2)

    @property
    def prime_max(self) -> int:
        """Get the default upper end of a prime sweep."""
        return self._get_int("sweep.prime_max", constants.DEFAULT_PRIME_MAX, 2)

    @property
    def log_level(self) -> str:
        """Get log level."""
        level = str(self.get("logging.level", constants.DEFAULT_LOG_LEVEL)).upper()
        if level not in constants.LOG_LEVELS:
            raise ConfigurationError(f"Config value logging.level={level!r} is not one of {constants.LOG_LEVELS}")
        return level

    @property
    def log_dir(self) -> Optional[Path]:
        """Get directory for log files, if file logging is enabled."""
        value = self.get("logging.dir")
        return Path(value).expanduser() if value else None

    @property
    def log_format(self) -> str:
        """Get console log format."""
        value = self.get("logging.format", constants.DEFAULT_LOG_FORMAT)
        if value not in constants.LOG_FORMATS:
            raise ConfigurationError(f"Config value logging.format={value!r} must be text or json")
        return value


# Global config instance
_config: Optional[Config] = None


def get_config(config_file: Optional[Path] = None) -> Config:
    """
    Get global configuration instance.

    Args:
        config_file: Path to config file (only used on first call)

    Returns:
        Config instance
    """
    global _config
    if _config is None:
        _config = Config(config_file)
    return _config


def reset_config() -> None:
    """Drop the global configuration instance."""
    global _config
    _config = None
