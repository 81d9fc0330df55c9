import pytest
from pydantic import BaseModel, ValidationError

from frw_entanglement.utils import (
    WORKERS_ENV_VAR,
    ComplexVal,
    DegenerateModeError,
    FrwEntanglementError,
    IntegrationError,
    ParameterDomainError,
    PoleError,
    RunSettings,
)


class _Holder(BaseModel):
    value: ComplexVal


def test_complex_val_round_trip():
    holder = _Holder(value=1.5 - 2j)
    assert holder.model_dump() == {"value": {"re": 1.5, "im": -2.0}}
    assert _Holder.model_validate_json(holder.model_dump_json()).value == 1.5 - 2j


def test_complex_val_accepts_real_numbers():
    assert _Holder(value=3).value == 3 + 0j


@pytest.mark.parametrize("value", [complex("nan"), complex(0, float("inf"))])
def test_complex_val_rejects_non_finite(value):
    with pytest.raises(ValidationError):
        _Holder(value=value)


def test_error_hierarchy():
    assert issubclass(PoleError, ParameterDomainError)
    assert issubclass(DegenerateModeError, ValueError)
    assert issubclass(IntegrationError, FrwEntanglementError)


def test_integration_error_repr():
    error = IntegrationError("Required step size is less than spacing", 42, -3.5)
    assert repr(error) == (
        "IntegrationError(message=Required step size is less than spacing, "
        "steps=42, eta=-3.5)"
    )
    assert str(error) == repr(error)


@pytest.mark.parametrize("env,workers", [(None, 1), ("4", 4), ("0", 1), ("many", 1)])
def test_run_settings_workers(monkeypatch, env, workers):
    if env is None:
        monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
    else:
        monkeypatch.setenv(WORKERS_ENV_VAR, env)
    assert RunSettings().workers == workers


def test_run_settings_validation():
    with pytest.raises(ValidationError):
        RunSettings(workers=0)
