"""Pytest configuration and fixtures."""

import os
import random
import tempfile

import pytest

from iterroots.config import IterRootsConfig
from iterroots.field import Backend

ENV_KEYS = (
    "ITERROOTS_MODE",
    "ITERROOTS_TOLERANCE",
    "ITERROOTS_ABS_TOLERANCE",
    "ITERROOTS_OUTPUT",
    "ITERROOTS_SEED",
    "ITERROOTS_MAX_DEGREE",
    "DEBUG",
    "HTTP_HOST",
    "HTTP_PORT",
    "MCP_TRANSPORT",
)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield temp_dir


@pytest.fixture
def temp_env_file(temp_dir):
    """Create a temporary .env file for testing."""
    env_path = os.path.join(temp_dir, ".env")
    env_content = """ITERROOTS_MODE=approx
ITERROOTS_TOLERANCE=1e-8
ITERROOTS_OUTPUT=json
ITERROOTS_SEED=7
DEBUG=true
"""
    with open(env_path, "w") as f:
        f.write(env_content)
    return env_path


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every iterroots setting from the environment."""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def exact_config():
    return IterRootsConfig()


@pytest.fixture
def approx_config():
    return IterRootsConfig(mode=Backend.APPROX)


@pytest.fixture
def json_config():
    return IterRootsConfig(output="json")


@pytest.fixture
def rng():
    """Seeded generator for the sampled suites."""
    return random.Random(20240601)

