"""The 1+1 dimensional FRW background with a tanh conformal scale factor.

The expansion interpolates between two flat regions: C -> 1 as eta -> -inf and
C -> (1 + 2 epsilon)^(1/2) as eta -> +inf. Frequencies are labelled by the
asymptotic region they belong to (past/future), not by in/out.
"""

import enum
import logging
import math

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from frw_entanglement.utils import DegenerateModeError

logger = logging.getLogger(f"catalystcoop.{__name__}")

RealOrArray = float | npt.NDArray[np.float64]


class Statistics(enum.StrEnum):
    """Quantum statistics of a field mode."""

    BOSON = "boson"
    FERMION = "fermion"


class Spin(enum.StrEnum):
    """Spin of the field; labels double as CLI and CSV tokens."""

    ZERO = "0"
    HALF = "half"
    ONE = "1"
    THREE_HALVES = "threehalf"

    @classmethod
    def _missing_(cls, value):
        aliases = {
            "1/2": cls.HALF,
            "0.5": cls.HALF,
            "3/2": cls.THREE_HALVES,
            "1.5": cls.THREE_HALVES,
        }
        return aliases.get(str(value).strip().lower())

    @property
    def statistics(self) -> Statistics:
        """Integer spins are bosons, half-integer spins fermions."""
        if self in (Spin.ZERO, Spin.ONE):
            return Statistics.BOSON
        return Statistics.FERMION


class ExpansionParams(BaseModel):
    """Total-volume parameter epsilon and rapidity rho of the expansion."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(ge=0, allow_inf_nan=False)
    rho: float = Field(ge=0, allow_inf_nan=False)

    @property
    def is_flat(self) -> bool:
        """True when the background never changes (no particle creation)."""
        return self.epsilon == 0 or self.rho == 0


class ModeParams(BaseModel):
    """A single field mode: mass, momentum and spin."""

    model_config = ConfigDict(frozen=True)

    m: float = Field(ge=0, allow_inf_nan=False)
    k: float = Field(allow_inf_nan=False)
    spin: Spin = Spin.ZERO

    @property
    def statistics(self) -> Statistics:
        """Statistics implied by the spin."""
        return self.spin.statistics


class Frequencies(BaseModel):
    """Asymptotic mode frequencies in the distant past and far future."""

    model_config = ConfigDict(frozen=True)

    omega_past: float = Field(gt=0)
    omega_future: float = Field(gt=0)

    @model_validator(mode="after")
    def check_ordering(self):
        """The scale factor only grows, so the frequency can't drop."""
        if self.omega_future < self.omega_past * (1 - 1e-15):
            raise ValueError(
                f"omega_future={self.omega_future} < omega_past={self.omega_past}"
            )
        return self


def scale_factor(p: ExpansionParams, eta: RealOrArray) -> RealOrArray:
    """C(eta) = (1 + epsilon (1 + tanh(rho eta)))^(1/2)."""
    return np.sqrt(1 + p.epsilon * (1 + np.tanh(p.rho * np.asarray(eta))))


def scale_factor_deriv(p: ExpansionParams, eta: RealOrArray) -> RealOrArray:
    """dC/deta = epsilon rho sech^2(rho eta) / (2 C(eta))."""
    sech = 1 / np.cosh(p.rho * np.asarray(eta))
    return p.epsilon * p.rho * sech**2 / (2 * scale_factor(p, eta))


def asymptotic_scale_factors(p: ExpansionParams) -> tuple[float, float]:
    """Limits of C as rho eta -> -inf and rho eta -> +inf.

    At rho = 0 the profile is frozen at its eta = 0 value (1 + epsilon)^(1/2);
    callers treat that case as flat and never integrate across it.
    """
    return 1.0, math.sqrt(1 + 2 * p.epsilon)


def instantaneous_frequency(
    p: ExpansionParams, mode: ModeParams, eta: RealOrArray
) -> RealOrArray:
    """omega(eta) = (k^2 + m^2 C^2(eta))^(1/2)."""
    return np.sqrt(mode.k**2 + mode.m**2 * scale_factor(p, eta) ** 2)


def frequencies(p: ExpansionParams, mode: ModeParams) -> Frequencies:
    """Asymptotic frequencies of a mode.

    omega_past = (k^2 + m^2)^(1/2) and omega_future = (k^2 + m^2 (1 + 2 epsilon))^(1/2).

    Raises:
        DegenerateModeError: for the zero-frequency mode m = k = 0.
    """
    if mode.m == 0 and mode.k == 0:
        raise DegenerateModeError("The m = k = 0 mode has zero frequency.")
    c_past, c_future = asymptotic_scale_factors(p)
    return Frequencies(
        omega_past=math.sqrt(mode.k**2 + (mode.m * c_past) ** 2),
        omega_future=math.sqrt(mode.k**2 + (mode.m * c_future) ** 2),
    )
