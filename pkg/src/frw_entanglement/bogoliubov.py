"""Analytic Bogoliubov coefficients for bosonic modes of the tanh expansion.

Three views of the same mixing are exposed:

* :func:`paper_alpha_beta` evaluates the two Gamma-function ratios exactly as
  they are usually printed, with no normalization or relabelling.
* :func:`canonical_boson_coefficients` rescales that pair by
  (omega_future / omega_past)^(1/2) (the 1/sqrt(2 omega) normalization of the
  asymptotic plane waves) and names the larger-modulus member alpha, so that
  |alpha|^2 - |beta|^2 = 1.
* :func:`mixing_ratio_x` is the overflow-free closed form of |beta/alpha|^2.

The ODE extraction in :mod:`frw_entanglement.modesolver` is the independent
arbiter of the labelling.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, computed_field, model_validator

from frw_entanglement.cosmology import (
    ExpansionParams,
    ModeParams,
    Statistics,
    frequencies,
)
from frw_entanglement.specfun import gamma_ratio, log_sinh
from frw_entanglement.utils import ComplexVal, ParameterDomainError, PoleError

logger = logging.getLogger(f"catalystcoop.{__name__}")

NORMALIZATION_TOL = 1e-8


class BogoliubovCoefficients(BaseModel):
    """A normalized pair of Bogoliubov coefficients."""

    model_config = ConfigDict(frozen=True)

    alpha: ComplexVal
    beta: ComplexVal
    statistics: Statistics

    @model_validator(mode="after")
    def check_normalization(self):
        """Bosons need |a|^2 - |b|^2 = 1, fermions |a|^2 + |b|^2 = 1."""
        sign = -1 if self.statistics == Statistics.BOSON else 1
        residual = self.alpha_sq + sign * self.beta_sq - 1
        if abs(residual) > NORMALIZATION_TOL:
            raise ValueError(
                f"{self.statistics} coefficients violate normalization by {residual:.3e}"
            )
        return self

    @computed_field
    @property
    def alpha_sq(self) -> float:
        """|alpha|^2."""
        return abs(self.alpha) ** 2

    @computed_field
    @property
    def beta_sq(self) -> float:
        """|beta|^2."""
        return abs(self.beta) ** 2

    @computed_field
    @property
    def x(self) -> float:
        """Mixing ratio |beta / alpha|^2."""
        if self.alpha_sq == 0:
            return math.inf
        return self.beta_sq / self.alpha_sq

    @classmethod
    def vacuum(cls, statistics: Statistics) -> "BogoliubovCoefficients":
        """No mixing at all: alpha = 1, beta = 0."""
        return cls(alpha=1 + 0j, beta=0j, statistics=statistics)


def mean_particle_number(coefficients: BogoliubovCoefficients) -> float:
    """Mean number of particles created in the mode, |beta|^2."""
    return coefficients.beta_sq


def _has_mixing(p: ExpansionParams, mode: ModeParams) -> bool:
    return not p.is_flat and mode.m > 0


def paper_alpha_beta(p: ExpansionParams, mode: ModeParams) -> tuple[complex, complex]:
    """The Gamma-function coefficient formulas, un-normalized and un-relabelled.

    The in-region frequency entering the formulas is omega_past and the
    out-region one omega_future. As printed, the first member has the smaller
    modulus and |first|^2 - |second|^2 = -omega_past / omega_future.

    Raises:
        PoleError: when omega_past == omega_future (m = 0 or epsilon = 0), where
            Gamma(0) appears in the first denominator.
        ParameterDomainError: for rho = 0.
    """
    if p.rho == 0:
        raise ParameterDomainError("The Gamma formulas need rho > 0.")
    freqs = frequencies(p, mode)
    w_in = freqs.omega_past / p.rho
    w_out = freqs.omega_future / p.rho
    half_diff = 0.5j * (w_in - w_out)
    half_sum = 0.5j * (w_in + w_out)

    first = gamma_ratio([1 + 1j * w_in, -1j * w_out], [1 + half_diff, half_diff])
    second = gamma_ratio([1 + 1j * w_in, 1j * w_out], [1 + half_sum, half_sum])
    return first, second


def canonical_boson_coefficients(
    p: ExpansionParams, mode: ModeParams
) -> BogoliubovCoefficients:
    """Normalized bosonic coefficients with |alpha|^2 - |beta|^2 = 1.

    Flat backgrounds (epsilon = 0 or rho = 0) and massless modes don't mix and
    return alpha = 1, beta = 0.
    """
    if not _has_mixing(p, mode):
        return BogoliubovCoefficients.vacuum(Statistics.BOSON)
    try:
        first, second = paper_alpha_beta(p, mode)
    except PoleError:
        # omega_past and omega_future agree to within 1e-14 rho
        logger.debug(f"Frequencies coincide for {mode}, treating as unmixed.")
        return BogoliubovCoefficients.vacuum(Statistics.BOSON)

    freqs = frequencies(p, mode)
    scale = math.sqrt(freqs.omega_future / freqs.omega_past)
    larger, smaller = sorted([first, second], key=abs, reverse=True)
    return BogoliubovCoefficients(
        alpha=larger * scale,
        beta=smaller * scale,
        statistics=Statistics.BOSON,
    )


def mixing_ratio_x(p: ExpansionParams, mode: ModeParams) -> float:
    """x = |beta/alpha|^2 for bosons from the sinh closed form.

    x = [sinh(pi (w_f - w_p) / (2 rho)) / sinh(pi (w_f + w_p) / (2 rho))]^2,
    evaluated as exp(2 (log_sinh(a) - log_sinh(b))) so it never overflows and
    underflows cleanly to 0 in the adiabatic limit.
    """
    if not _has_mixing(p, mode):
        return 0.0
    freqs = frequencies(p, mode)
    total = freqs.omega_future + freqs.omega_past
    # w_f - w_p without cancellation
    gap = 2 * p.epsilon * mode.m**2 / total
    a = math.pi * gap / (2 * p.rho)
    b = math.pi * total / (2 * p.rho)
    if a == 0:
        return 0.0
    return math.exp(2 * (log_sinh(a) - log_sinh(b)))
