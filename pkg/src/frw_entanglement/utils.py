"""Utility types, errors and settings used in multiple places within frw_entanglement."""

import cmath
import logging
import os
import typing
from pathlib import Path

from pydantic import BaseModel, Field
from pydantic.functional_serializers import PlainSerializer
from pydantic.functional_validators import AfterValidator, BeforeValidator

logger = logging.getLogger(f"catalystcoop.{__name__}")

WORKERS_ENV_VAR = "FRW_ENTANGLEMENT_WORKERS"


class FrwEntanglementError(Exception):
    """Base class for all errors raised by frw_entanglement."""


class ParameterDomainError(FrwEntanglementError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PoleError(ParameterDomainError):
    """A Gamma or hypergeometric function was evaluated at (or next to) a pole."""


class DegenerateModeError(ParameterDomainError):
    """The zero-frequency mode (m = k = 0) was requested."""


class ConvergenceError(FrwEntanglementError):
    """A series or iterative method hit its iteration cap without converging."""


class NumericOverflowError(FrwEntanglementError, OverflowError):
    """A result is too large to represent as a double."""


class BracketingError(FrwEntanglementError):
    """A peak search could not bracket a single interior maximum."""


class IntegrationError(FrwEntanglementError):
    """The mode integrator failed before reaching the end of its interval."""

    def __init__(self, message: str, steps: int, eta: float):
        """Constructor.

        Args:
            message: what went wrong.
            steps: number of accepted steps before the failure.
            eta: conformal time reached when the integrator stopped.
        """
        super().__init__(message)
        self.message = message
        self.steps = steps
        self.eta = eta

    def __str__(self):
        """Cast to string."""
        return repr(self)

    def __repr__(self):
        """The fields are useful for reproducing the failing run."""
        return f"IntegrationError(message={self.message}, steps={self.steps}, eta={self.eta})"


def _complex_from_any(value: typing.Any) -> typing.Any:
    """Accept the ``{"re": ..., "im": ...}`` form produced by the serializer."""
    if isinstance(value, dict):
        return complex(value["re"], value["im"])
    return value


def _check_finite(value: complex) -> complex:
    if not cmath.isfinite(value):
        raise ValueError(f"Complex value must be finite, got {value}")
    return complex(value)


# A complex number that is always finite and serializes to a {"re", "im"} object
ComplexVal = typing.Annotated[
    complex,
    BeforeValidator(_complex_from_any),
    AfterValidator(_check_finite),
    PlainSerializer(lambda z: {"re": z.real, "im": z.imag}, return_type=dict),
]


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV_VAR, "1")))
    except ValueError:
        logger.warning(f"Ignoring non-integer {WORKERS_ENV_VAR}.")
        return 1


class RunSettings(BaseModel):
    """Settings for a sweep or figure run taken from CLI options."""

    workers: int = Field(default_factory=_default_workers, ge=1)
    progress: bool = True
    out: Path | None = None
