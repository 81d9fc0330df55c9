"""Pytest configuration module."""

import pytest

from frw_entanglement.cosmology import ExpansionParams, ModeParams, Spin
from frw_entanglement.modesolver import IntegrationSettings


@pytest.fixture()
def reference_expansion():
    """The epsilon=2, rho=2 background used throughout the mass-momentum checks."""
    return ExpansionParams(epsilon=2.0, rho=2.0)


@pytest.fixture()
def gapped_mode():
    """Massive mode at rest whose frequency doubles across epsilon=1.5."""
    return ModeParams(m=1.0, k=0.0, spin=Spin.ONE)


@pytest.fixture()
def unit_expansion():
    """epsilon=1, rho=1 background used for the mode-function comparison."""
    return ExpansionParams(epsilon=1.0, rho=1.0)


@pytest.fixture()
def unit_settings(unit_expansion):
    """Default integration settings on the unit background."""
    return IntegrationSettings.for_expansion(unit_expansion)
