"""Configuration file resolution with source tracking."""

import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from nonsmooth_cert import constants


class ConfigSource(Enum):
    """Source of the configuration file."""
    CLI_FLAG = "from --config flag"
    ENV_VAR = f"from {constants.CONFIG_ENV_VAR} environment variable"
    USER_CONFIG = f"from ~/{constants.USER_CONFIG_FILE_NAME}"
    DEFAULT = "built-in defaults"


@dataclass
class ConfigResolution:
    """Result of configuration file resolution."""
    path: Optional[Path]
    source: ConfigSource

    def log_message(self) -> str:
        """Get log message describing the resolution."""
        if self.path is None:
            return f"Configuration: {self.source.value}"
        return f"Configuration: {self.path} ({self.source.value})"


def get_user_config_path() -> Path:
    """Get path to the user config file in the home directory."""
    return Path.home() / constants.USER_CONFIG_FILE_NAME


def resolve_config_file(cli_config: Optional[str] = None) -> ConfigResolution:
    """
    Resolve the configuration file from multiple sources.

    Priority order:
    1. CLI flag --config (highest priority)
    2. Environment variable NONSMOOTH_CERT_CONFIG
    3. User config file ~/.nonsmooth-cert.json
    4. Built-in defaults (no file)

    Args:
        cli_config: Config path from CLI flag (if provided)

    Returns:
        ConfigResolution with path and source for logging
    """
    if cli_config:
        return ConfigResolution(
            path=Path(cli_config).expanduser().resolve(),
            source=ConfigSource.CLI_FLAG
        )

    env_config = os.getenv(constants.CONFIG_ENV_VAR)
    if env_config:
        return ConfigResolution(
            path=Path(env_config).expanduser().resolve(),
            source=ConfigSource.ENV_VAR
        )

    user_config_path = get_user_config_path()
    if user_config_path.exists():
        return ConfigResolution(
            path=user_config_path,
            source=ConfigSource.USER_CONFIG
        )

    return ConfigResolution(path=None, source=ConfigSource.DEFAULT)
