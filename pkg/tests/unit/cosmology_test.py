import math

import numpy as np
import pytest
from pydantic import ValidationError

from frw_entanglement.cosmology import (
    ExpansionParams,
    Frequencies,
    ModeParams,
    Spin,
    Statistics,
    asymptotic_scale_factors,
    frequencies,
    instantaneous_frequency,
    scale_factor,
    scale_factor_deriv,
)
from frw_entanglement.utils import DegenerateModeError, ParameterDomainError


def test_scale_factor_limits():
    p = ExpansionParams(epsilon=1.5, rho=1.0)
    assert scale_factor(p, -100.0) == pytest.approx(1.0, abs=1e-15)
    assert scale_factor(p, 0.0) == pytest.approx(math.sqrt(2.5))
    assert scale_factor(p, 100.0) == pytest.approx(2.0, abs=1e-15)
    assert asymptotic_scale_factors(p) == (1.0, 2.0)


def test_scale_factor_accepts_arrays():
    p = ExpansionParams(epsilon=2.0, rho=2.0)
    etas = np.linspace(-5, 5, 11)
    values = scale_factor(p, etas)
    assert values.shape == (11,)
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("eta", [-3.0, -0.4, 0.0, 0.25, 2.0])
def test_scale_factor_deriv_matches_finite_difference(eta):
    p = ExpansionParams(epsilon=2.0, rho=1.5)
    h = 1e-6
    numeric = (scale_factor(p, eta + h) - scale_factor(p, eta - h)) / (2 * h)
    assert scale_factor_deriv(p, eta) == pytest.approx(numeric, abs=1e-8)


def test_flat_backgrounds():
    assert ExpansionParams(epsilon=0.0, rho=2.0).is_flat
    assert ExpansionParams(epsilon=2.0, rho=0.0).is_flat
    assert not ExpansionParams(epsilon=2.0, rho=2.0).is_flat
    flat = ExpansionParams(epsilon=2.0, rho=0.0)
    assert scale_factor(flat, 10.0) == pytest.approx(math.sqrt(3.0))


@pytest.mark.parametrize(
    "m,k,epsilon,omega_past,omega_future",
    [
        (1.0, 0.0, 1.5, 1.0, 2.0),
        (0.0, 3.0, 8.0, 3.0, 3.0),
        (3.0, 4.0, 0.0, 5.0, 5.0),
        (1.0, -1.0, 0.5, math.sqrt(2), math.sqrt(3)),
    ],
)
def test_frequencies(m, k, epsilon, omega_past, omega_future):
    freqs = frequencies(ExpansionParams(epsilon=epsilon, rho=1.0), ModeParams(m=m, k=k))
    assert freqs.omega_past == pytest.approx(omega_past)
    assert freqs.omega_future == pytest.approx(omega_future)


def test_instantaneous_frequency_tends_to_asymptotes():
    p = ExpansionParams(epsilon=1.5, rho=1.0)
    mode = ModeParams(m=1.0, k=0.0)
    assert instantaneous_frequency(p, mode, -50.0) == pytest.approx(1.0)
    assert instantaneous_frequency(p, mode, 50.0) == pytest.approx(2.0)


def test_zero_frequency_mode():
    with pytest.raises(DegenerateModeError):
        frequencies(ExpansionParams(epsilon=1.0, rho=1.0), ModeParams(m=0.0, k=0.0))
    assert issubclass(DegenerateModeError, ParameterDomainError)


def test_frequencies_must_not_decrease():
    with pytest.raises(ValidationError):
        Frequencies(omega_past=2.0, omega_future=1.0)


@pytest.mark.parametrize(
    "model,kwargs",
    [
        (ExpansionParams, {"epsilon": -0.1, "rho": 1.0}),
        (ExpansionParams, {"epsilon": 1.0, "rho": -1.0}),
        (ExpansionParams, {"epsilon": float("inf"), "rho": 1.0}),
        (ModeParams, {"m": -1.0, "k": 0.0}),
        (ModeParams, {"m": 1.0, "k": float("nan")}),
        (ModeParams, {"m": 1.0, "k": 0.0, "spin": "2"}),
    ],
)
def test_invalid_parameters(model, kwargs):
    with pytest.raises(ValidationError):
        model(**kwargs)


@pytest.mark.parametrize(
    "label,spin,statistics",
    [
        ("0", Spin.ZERO, Statistics.BOSON),
        ("1", Spin.ONE, Statistics.BOSON),
        ("half", Spin.HALF, Statistics.FERMION),
        ("1/2", Spin.HALF, Statistics.FERMION),
        ("threehalf", Spin.THREE_HALVES, Statistics.FERMION),
        ("3/2", Spin.THREE_HALVES, Statistics.FERMION),
    ],
)
def test_spin_labels(label, spin, statistics):
    assert Spin(label) is spin
    assert spin.statistics == statistics
    assert ModeParams(m=1.0, k=0.0, spin=label).statistics == statistics


def test_scale_factor_is_monotone():
    rng = np.random.default_rng(7)
    etas = np.linspace(-20, 20, 1000)
    for epsilon, rho in zip(rng.uniform(0, 10, 20), rng.uniform(0, 10, 20), strict=True):
        values = scale_factor(ExpansionParams(epsilon=epsilon, rho=rho), etas)
        assert np.all(np.diff(values) >= 0)


@pytest.mark.parametrize("epsilon,rho", [(0.5, 0.3), (2.0, 2.0), (8.0, 10.0)])
def test_scale_factor_identity(epsilon, rho):
    etas = np.linspace(-5, 5, 101)
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    residual = scale_factor(p, etas) ** 2 - 1 - epsilon * (1 + np.tanh(rho * etas))
    assert np.max(np.abs(residual)) < 1e-12


@pytest.mark.parametrize(
    "epsilon,rho,eta,expected",
    [(0.0, 2.0, 0.7, 0.0), (2.0, 2.0, 0.0, 2 / math.sqrt(3))],
)
def test_scale_factor_deriv_examples(epsilon, rho, eta, expected):
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    assert scale_factor_deriv(p, eta) == pytest.approx(expected, abs=1e-15)
