"""End-to-end checks of the physics: oracle agreement, null results and figure shapes."""

import time

import numpy as np
import pytest

from frw_entanglement import bogoliubov, modesolver
from frw_entanglement.cosmology import ExpansionParams, ModeParams, Spin, frequencies
from frw_entanglement.entanglement import entropy_for_mode, find_m_max
from frw_entanglement.pipeline.verify import ORACLE_GRID, VerifyLevel, run_verify


def _entropy(m, k, epsilon, rho, spin):
    return entropy_for_mode(
        ExpansionParams(epsilon=epsilon, rho=rho), ModeParams(m=m, k=k, spin=spin)
    ).entropy_bits


@pytest.mark.slow
@pytest.mark.parametrize("m,k,epsilon,rho", ORACLE_GRID)
def test_three_routes_to_the_mixing_ratio_agree(m, k, epsilon, rho):
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    boson = ModeParams(m=m, k=k, spin=Spin.ZERO)
    gamma = bogoliubov.canonical_boson_coefficients(p, boson)
    closed_form = bogoliubov.mixing_ratio_x(p, boson)
    extracted = modesolver.extract_bogoliubov_boson(
        modesolver.integrate_boson_mode(p, boson), frequencies(p, boson).omega_future
    )
    assert gamma.x == pytest.approx(closed_form, rel=1e-10, abs=1e-300)
    assert extracted.x == pytest.approx(gamma.x, abs=1e-6)
    assert abs(extracted.alpha_sq - extracted.beta_sq - 1) <= 1e-8

    fermion = ModeParams(m=m, k=k, spin=Spin.HALF)
    final = modesolver.integrate_fermion_system(p, fermion)
    coefficients = modesolver.extract_bogoliubov_fermion(final, p, fermion)
    assert abs(coefficients.alpha_sq + coefficients.beta_sq - 1) <= 1e-8


@pytest.mark.parametrize("spin", [Spin.ONE, Spin.HALF])
@pytest.mark.parametrize("k", [0.5, 2.0])
def test_massless_fields_are_unentangled(spin, k):
    assert _entropy(0.0, k, 2.0, 2.0, spin) < 1e-10


@pytest.mark.parametrize(
    "spin,epsilon,rho",
    [(Spin.ONE, 0.0, 2.0), (Spin.ONE, 2.0, 0.0), (Spin.HALF, 0.0, 1.0)],
)
def test_flat_backgrounds_are_unentangled(spin, epsilon, rho):
    assert _entropy(1.0, 0.5, epsilon, rho, spin) < 1e-10


def test_mass_momentum_plane():
    start = time.perf_counter()
    curve = [_entropy(1.0, k, 2.0, 2.0, Spin.ONE) for k in np.arange(0, 5.25, 0.25)]
    assert np.all(np.diff(curve) < 0)
    p = ExpansionParams(epsilon=2.0, rho=2.0)
    assert find_m_max(1.0, p)[0] > find_m_max(0.1, p)[0]
    assert time.perf_counter() - start < 5


def test_volume_rapidity_plane():
    values = [0.5, 1.0, 2.0, 4.0]
    along_epsilon = [_entropy(1.0, 0.1, epsilon, 2.0, Spin.ONE) for epsilon in values]
    along_rho = [_entropy(1.0, 0.1, 2.0, rho, Spin.ONE) for rho in values]
    assert np.all(np.diff(along_epsilon) > 0)
    assert np.all(np.diff(along_rho) > 0)


@pytest.mark.slow
def test_full_verification_passes():
    report = run_verify(VerifyLevel.FULL)
    failed = [check.check for check in report.get_failed_checks()]
    assert failed == []
    assert report.overall
