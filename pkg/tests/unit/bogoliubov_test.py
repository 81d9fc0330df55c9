import math

import pytest
from pydantic import ValidationError

from frw_entanglement.bogoliubov import (
    BogoliubovCoefficients,
    canonical_boson_coefficients,
    mean_particle_number,
    mixing_ratio_x,
    paper_alpha_beta,
)
from frw_entanglement.cosmology import ExpansionParams, ModeParams, Spin, Statistics
from frw_entanglement.utils import ParameterDomainError, PoleError

GAPPED_EXPANSION = ExpansionParams(epsilon=1.5, rho=1.0)
# omega_past = 1 and omega_future = 2, so the sinh arguments are pi/2 and 3 pi/2
GAPPED_RATIO = math.sinh(math.pi / 2) ** 2 / math.sinh(3 * math.pi / 2) ** 2


def test_mixing_ratio_closed_form(gapped_mode):
    assert mixing_ratio_x(GAPPED_EXPANSION, gapped_mode) == pytest.approx(
        GAPPED_RATIO, rel=1e-12
    )
    assert mixing_ratio_x(GAPPED_EXPANSION, gapped_mode) == pytest.approx(
        1.7098e-3, rel=1e-4
    )


def test_paper_pair(gapped_mode):
    first, second = paper_alpha_beta(GAPPED_EXPANSION, gapped_mode)
    assert abs(first) < abs(second)
    assert abs(second) ** 2 / abs(first) ** 2 == pytest.approx(1 / GAPPED_RATIO, rel=1e-10)
    # |first|^2 - |second|^2 = -omega_past / omega_future
    assert abs(first) ** 2 - abs(second) ** 2 == pytest.approx(-0.5, rel=1e-10)


def test_canonical_coefficients(gapped_mode):
    coefficients = canonical_boson_coefficients(GAPPED_EXPANSION, gapped_mode)
    assert coefficients.alpha_sq - coefficients.beta_sq == pytest.approx(1, abs=1e-12)
    assert coefficients.x == pytest.approx(GAPPED_RATIO, rel=1e-10)
    assert mean_particle_number(coefficients) == pytest.approx(
        GAPPED_RATIO / (1 - GAPPED_RATIO), rel=1e-10
    )


@pytest.mark.parametrize("m", [0.2, 1.0, 5.0])
@pytest.mark.parametrize("k", [0.0, 0.5, 2.0, 10.0])
@pytest.mark.parametrize("epsilon", [0.5, 2.0, 8.0])
@pytest.mark.parametrize("rho", [0.5, 2.0, 10.0])
def test_gamma_route_matches_sinh(m, k, epsilon, rho):
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    mode = ModeParams(m=m, k=k, spin=Spin.ONE)
    coefficients = canonical_boson_coefficients(p, mode)
    assert abs(coefficients.alpha_sq - coefficients.beta_sq - 1) <= 1e-8
    assert coefficients.x == pytest.approx(mixing_ratio_x(p, mode), rel=1e-10)


@pytest.mark.parametrize(
    "epsilon,rho,m,k",
    [(0.0, 2.0, 1.0, 0.5), (2.0, 0.0, 1.0, 0.5), (2.0, 2.0, 0.0, 0.5), (2.0, 2.0, 0.0, 0.0)],
)
def test_no_mixing(epsilon, rho, m, k):
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    mode = ModeParams(m=m, k=k)
    assert mixing_ratio_x(p, mode) == 0.0
    assert canonical_boson_coefficients(p, mode) == BogoliubovCoefficients.vacuum(
        Statistics.BOSON
    )


def test_paper_pair_domain():
    with pytest.raises(PoleError):
        paper_alpha_beta(ExpansionParams(epsilon=2.0, rho=2.0), ModeParams(m=0.0, k=1.0))
    with pytest.raises(ParameterDomainError):
        paper_alpha_beta(ExpansionParams(epsilon=2.0, rho=0.0), ModeParams(m=1.0, k=1.0))


def test_adiabatic_limit_underflows_cleanly():
    p = ExpansionParams(epsilon=2.0, rho=0.01)
    assert mixing_ratio_x(p, ModeParams(m=1.0, k=1.0)) < 1e-100


def test_normalization_is_validated():
    with pytest.raises(ValidationError):
        BogoliubovCoefficients(alpha=1.0, beta=0.5, statistics=Statistics.BOSON)
    fermion = BogoliubovCoefficients(
        alpha=math.sqrt(0.75), beta=0.5j, statistics=Statistics.FERMION
    )
    assert fermion.x == pytest.approx(1 / 3)
    with pytest.raises(ValidationError):
        BogoliubovCoefficients(alpha=complex("nan"), beta=0, statistics="boson")


def test_coefficients_serialize_as_re_im():
    coefficients = BogoliubovCoefficients(
        alpha=math.sqrt(0.75), beta=0.5j, statistics=Statistics.FERMION
    )
    dumped = coefficients.model_dump()
    assert dumped["beta"] == {"re": 0.0, "im": 0.5}
    assert dumped["x"] == pytest.approx(1 / 3)
    restored = BogoliubovCoefficients.model_validate(
        {key: dumped[key] for key in ("alpha", "beta", "statistics")}
    )
    assert restored == coefficients


@pytest.mark.parametrize("m", [0.2, 1.0, 5.0])
@pytest.mark.parametrize("epsilon", [0.5, 2.0, 8.0])
@pytest.mark.parametrize("rho", [0.5, 2.0, 10.0])
def test_mixing_ratio_falls_with_momentum(m, epsilon, rho):
    p = ExpansionParams(epsilon=epsilon, rho=rho)
    x = [mixing_ratio_x(p, ModeParams(m=m, k=k)) for k in (0.0, 0.5, 2.0, 10.0)]
    assert all(later < earlier for earlier, later in zip(x, x[1:]))
