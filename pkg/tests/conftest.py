"""Shared fixtures for phasefit tests."""

import pytest

from phasefit.config import PhaseFitConfig
from phasefit.models.estimation import EstimationConfig
from phasefit.models.state import StateSpec


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep PHASEFIT_* variables of the developer shell out of the tests."""
    import os

    for key in list(os.environ):
        if key.upper().startswith("PHASEFIT_"):
            monkeypatch.delenv(key)


@pytest.fixture
def settings() -> PhaseFitConfig:
    return PhaseFitConfig()


@pytest.fixture
def fast_estimation() -> EstimationConfig:
    """Coarser scan for Monte-Carlo tests."""
    return EstimationConfig(coarse_grid=513)


@pytest.fixture
def noon2() -> StateSpec:
    return StateSpec.noon(2)
