"""Pytest configuration and fixtures for nonsmooth-cert tests."""

import logging
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

# Add src and tests to path for imports
_project_root = Path(__file__).parent.parent
sys.path.insert(0, str(_project_root / "src"))
sys.path.insert(0, str(_project_root))

from nonsmooth_cert import constants
from nonsmooth_cert.config import reset_config
from nonsmooth_cert.models import ManifoldInvariants
from nonsmooth_cert.obstruction import certificate_to_dict
from nonsmooth_cert.search import k3_stabilization_config, theorem_1_4_construct


# =============================================================================
# Manifold and Configuration Fixtures
# =============================================================================

@pytest.fixture
def k3() -> ManifoldInvariants:
    """K3 surface: b2+ = 3, b2- = 19, spin."""
    return ManifoldInvariants(constants.K3_B2_PLUS, constants.K3_B2_MINUS, spin=True)


@pytest.fixture
def k3_config():
    """Sixteen reversed CP2 components in the K3 pattern at p = 11, s = 12."""
    return k3_stabilization_config(0)


@pytest.fixture
def k3_certificate():
    """Verified certificate for K3 at p = 11 (dim 6 against (-19, 3))."""
    return theorem_1_4_construct(0)


@pytest.fixture
def k3_document(k3_certificate) -> dict:
    """The K3 certificate as a JSON document."""
    return certificate_to_dict(k3_certificate)


# =============================================================================
# Environment Fixtures
# =============================================================================

@pytest.fixture
def isolated_config(tmp_path, monkeypatch) -> Path:
    """
    Isolate configuration resolution from the developer's machine.

    HOME points at an empty temp directory and the config env var is unset,
    so resolution falls through to the built-in defaults.
    """
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.delenv(constants.CONFIG_ENV_VAR, raising=False)
    reset_config()
    yield home
    reset_config()


@pytest.fixture
def cli_runner(isolated_config) -> CliRunner:
    """Click runner with an isolated configuration."""
    return CliRunner()


@pytest.fixture(autouse=True)
def _reset_package_logger():
    """Drop handlers bound to streams of a finished CLI invocation."""
    yield
    logger = logging.getLogger("nonsmooth_cert")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
    logger.propagate = True
