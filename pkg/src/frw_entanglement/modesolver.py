"""Numerical mode integration across the expansion, plus the analytic mode functions.

The integrator is the independent oracle for the Bogoliubov coefficients:
modes start as normalized positive-frequency plane waves deep in the past
region, are carried through the expansion by an adaptive embedded Runge-Kutta
stepper, and are projected onto the plane waves of the future region.

Bosons obey Phi'' + (k^2 + m^2 C^2) Phi = 0. Fermions are integrated as the
two-component system

    f' =  k g - i m C f
    g' = -k f + i m C g

whose second-order reduction is f'' + (k^2 + m^2 C^2 + i m C') f = 0 for the
upper component and the conjugate-sign equation for g. Which component carries
the minus sign doesn't change |beta|^2; the upper-component convention is used
throughout. The system conserves |f|^2 + |g|^2, which is the fermionic
normalization |alpha|^2 + |beta|^2 = 1.
"""

import cmath
import logging
import math
import typing
from collections.abc import Callable, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import DOP853, RK45

from frw_entanglement.bogoliubov import BogoliubovCoefficients
from frw_entanglement.cosmology import (
    ExpansionParams,
    ModeParams,
    Statistics,
    asymptotic_scale_factors,
    frequencies,
    instantaneous_frequency,
)
from frw_entanglement.specfun import hyp2f1
from frw_entanglement.utils import ComplexVal, IntegrationError, ParameterDomainError

logger = logging.getLogger(f"catalystcoop.{__name__}")

STEPPERS = {"DOP853": DOP853, "RK45": RK45}
DEFAULT_ASYMPTOTIC_TOL = 1e-12
MIN_SPAN_RAPIDITIES = 8.0
# Steps are capped at MAX_STEP / rho; needing one below MIN_STEP / rho fails
MIN_STEP = 1e-8
MAX_STEP = 0.1
NORM_WARN_TOL = 1e-10
# Relative slack when comparing exp(-2 rho T) with asymptotic_tol, so that
# the default T does not trip the check through rounding
RESIDUAL_RTOL = 1e-9


class IntegrationSettings(BaseModel):
    """How far and how accurately to integrate a mode."""

    model_config = ConfigDict(frozen=True)

    t_span: float = Field(gt=0, allow_inf_nan=False)
    rel_tol: float = Field(default=1e-12, gt=0, le=1e-3)
    abs_tol: float = Field(default=1e-14, gt=0, le=1e-3)
    max_steps: int = Field(default=1_000_000, ge=1)
    method: typing.Literal["DOP853", "RK45"] = "DOP853"
    asymptotic_tol: float = Field(default=DEFAULT_ASYMPTOTIC_TOL, gt=0, lt=1)

    @classmethod
    def for_expansion(
        cls, p: ExpansionParams, **overrides: typing.Any
    ) -> "IntegrationSettings":
        """Default settings: T = max(ln(1/asymptotic_tol) / (2 rho), 8 / rho)."""
        if p.rho <= 0:
            raise ParameterDomainError("Mode integration needs rho > 0.")
        asymptotic_tol = overrides.get("asymptotic_tol", DEFAULT_ASYMPTOTIC_TOL)
        t_span = max(
            math.log(1 / asymptotic_tol) / (2 * p.rho), MIN_SPAN_RAPIDITIES / p.rho
        )
        return cls(**({"t_span": t_span} | overrides))

    def residual_expansion(self, p: ExpansionParams) -> float:
        """How far the scale factor still is from its limits at eta = +-T."""
        return math.exp(-2 * p.rho * self.t_span)


class BosonModeState(BaseModel):
    """A bosonic mode Phi and its conformal-time derivative at ``eta``."""

    model_config = ConfigDict(frozen=True)

    eta: float
    value: ComplexVal
    derivative: ComplexVal

    @property
    def wronskian(self) -> complex:
        """W = Phi Phi*' - Phi* Phi'; equal to i for a normalized mode."""
        return (
            self.value * self.derivative.conjugate()
            - self.value.conjugate() * self.derivative
        )


class FermionModeState(BaseModel):
    """Upper and lower spinor components of a fermionic mode at ``eta``."""

    model_config = ConfigDict(frozen=True)

    eta: float
    f: ComplexVal
    g: ComplexVal

    @property
    def norm(self) -> float:
        """|f|^2 + |g|^2."""
        return abs(self.f) ** 2 + abs(self.g) ** 2


ModeState = BosonModeState | FermionModeState


def _settings_for(
    p: ExpansionParams, s: IntegrationSettings | None
) -> IntegrationSettings:
    if s is None:
        return IntegrationSettings.for_expansion(p)
    if p.rho <= 0:
        raise ParameterDomainError("Mode integration needs rho > 0.")
    if s.residual_expansion(p) > s.asymptotic_tol * (1 + RESIDUAL_RTOL):
        logger.warning(
            f"t_span={s.t_span} leaves exp(-2 rho T)={s.residual_expansion(p):.1e} "
            f"above asymptotic_tol={s.asymptotic_tol:.1e}."
        )
    return s


def _integrate(
    rhs: Callable[[float, npt.NDArray[np.complex128]], npt.NDArray[np.complex128]],
    y0: npt.NDArray[np.complex128],
    p: ExpansionParams,
    s: IntegrationSettings,
    eval_etas: npt.NDArray[np.float64] | None = None,
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128] | None]:
    """Step ``rhs`` from -T to +T, optionally sampling the dense output.

    Returns the final state and, if ``eval_etas`` (sorted, within [-T, T]) was
    given, the states at those times.
    """
    solver = STEPPERS[s.method](
        rhs,
        -s.t_span,
        y0,
        s.t_span,
        rtol=s.rel_tol,
        atol=s.abs_tol,
        max_step=MAX_STEP / p.rho,
    )
    samples = None
    next_sample = 0
    if eval_etas is not None:
        samples = np.empty((len(eval_etas), len(y0)), dtype=complex)
    steps = 0
    while solver.status == "running":
        if steps >= s.max_steps:
            raise IntegrationError("Step limit exceeded", steps, solver.t)
        message = solver.step()
        steps += 1
        if solver.status == "failed":
            raise IntegrationError(message or "Tolerance failure", steps, solver.t)
        if samples is not None and next_sample < len(eval_etas):
            if eval_etas[next_sample] <= solver.t:
                interpolant = solver.dense_output()
                while (
                    next_sample < len(eval_etas)
                    and eval_etas[next_sample] <= solver.t
                ):
                    samples[next_sample] = interpolant(eval_etas[next_sample])
                    next_sample += 1
        # The last step is cut short to land on +T; only earlier ones count
        if solver.status == "running" and solver.step_size < MIN_STEP / p.rho:
            raise IntegrationError(
                f"Step size {solver.step_size:.1e} fell below {MIN_STEP}/rho",
                steps,
                solver.t,
            )
    logger.debug(f"{s.method} reached eta={solver.t} in {steps} steps.")
    return solver.y, samples


def _boson_rhs(p: ExpansionParams, mode: ModeParams):
    k_sq, m_sq = mode.k**2, mode.m**2

    def rhs(eta, y):
        c_sq = 1 + p.epsilon * (1 + math.tanh(p.rho * eta))
        return np.array([y[1], -(k_sq + m_sq * c_sq) * y[0]])

    return rhs


def _fermion_rhs(p: ExpansionParams, mode: ModeParams):
    k, m = mode.k, mode.m

    def rhs(eta, y):
        mc = m * math.sqrt(1 + p.epsilon * (1 + math.tanh(p.rho * eta)))
        return np.array([k * y[1] - 1j * mc * y[0], -k * y[0] + 1j * mc * y[1]])

    return rhs


def _plane_wave(omega: float, eta: float) -> tuple[complex, complex]:
    """Normalized positive-frequency plane wave e^{-i omega eta} / sqrt(2 omega)."""
    u = cmath.exp(-1j * omega * eta) / math.sqrt(2 * omega)
    return u, -1j * omega * u


def _boson_initial_state(
    p: ExpansionParams, mode: ModeParams, s: IntegrationSettings
) -> npt.NDArray[np.complex128]:
    omega = frequencies(p, mode).omega_past
    return np.array(_plane_wave(omega, -s.t_span), dtype=complex)


def integrate_boson_mode(
    p: ExpansionParams, mode: ModeParams, s: IntegrationSettings | None = None
) -> BosonModeState:
    """Carry the past positive-frequency bosonic mode to eta = +T.

    Raises:
        ParameterDomainError: for rho = 0 or the degenerate m = k = 0 mode.
        IntegrationError: if the stepper fails or exceeds ``max_steps``.
    """
    s = _settings_for(p, s)
    omega_future = frequencies(p, mode).omega_future
    mismatch = instantaneous_frequency(p, mode, s.t_span) / omega_future - 1
    logger.debug(f"omega(T) differs from omega_future by {mismatch:.1e}.")
    y, _ = _integrate(_boson_rhs(p, mode), _boson_initial_state(p, mode, s), p, s)
    return BosonModeState(eta=s.t_span, value=y[0], derivative=y[1])


def integrate_boson_trajectory(
    p: ExpansionParams,
    mode: ModeParams,
    etas: Sequence[float],
    s: IntegrationSettings | None = None,
) -> npt.NDArray[np.complex128]:
    """Phi(eta) of the integrated bosonic mode at each of ``etas`` in [-T, T]."""
    s = _settings_for(p, s)
    eval_etas = np.asarray(etas, dtype=float)
    if np.any(np.diff(eval_etas) < 0):
        raise ParameterDomainError("Trajectory times must be sorted.")
    if eval_etas.size and (eval_etas[0] < -s.t_span or eval_etas[-1] > s.t_span):
        raise ParameterDomainError(
            f"Trajectory times must lie in [-{s.t_span}, {s.t_span}]."
        )
    _, samples = _integrate(
        _boson_rhs(p, mode), _boson_initial_state(p, mode, s), p, s, eval_etas
    )
    return samples[:, 0]


def extract_bogoliubov_boson(
    final: BosonModeState, omega_future: float
) -> BogoliubovCoefficients:
    """Solve Phi = alpha u + beta u*, Phi' = alpha u' + beta u*' at the final time.

    u is the normalized future plane wave e^{-i omega_future eta} / sqrt(2 omega_future).
    """
    if not omega_future > 0:
        raise ParameterDomainError("The projection is singular for omega_future <= 0.")
    u, _ = _plane_wave(omega_future, final.eta)
    shifted = 1j * final.derivative / omega_future
    alpha = (final.value + shifted) / (2 * u)
    beta = (final.value - shifted) / (2 * u.conjugate())
    return BogoliubovCoefficients(alpha=alpha, beta=beta, statistics=Statistics.BOSON)


def _spinors(
    mass: float, k: float, omega: float, eta: float
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal positive- and negative-frequency spinors for constant mass.

    u = (sqrt((w + M) / 2w), -i sgn(k) sqrt((w - M) / 2w)) e^{-i w eta}
    v = (sgn(k) sqrt((w - M) / 2w), i sqrt((w + M) / 2w)) e^{+i w eta}
    """
    sign = 1.0 if k >= 0 else -1.0
    # w - M = k^2 / (w + M) without cancellation
    upper = math.sqrt((omega + mass) / (2 * omega))
    lower = abs(k) / math.sqrt(2 * omega * (omega + mass))
    phase = cmath.exp(-1j * omega * eta)
    positive = np.array([upper, -1j * sign * lower]) * phase
    negative = np.array([sign * lower, 1j * upper]) * phase.conjugate()
    return positive, negative


def integrate_fermion_system(
    p: ExpansionParams, mode: ModeParams, s: IntegrationSettings | None = None
) -> FermionModeState:
    """Carry the past positive-frequency spinor mode to eta = +T.

    The initial spinor is proportional to (f0, i (m - omega_past) f0 / k), which
    reduces to (1, 0) at k = 0, normalized to |f|^2 + |g|^2 = 1.
    """
    s = _settings_for(p, s)
    freqs = frequencies(p, mode)
    c_past, _ = asymptotic_scale_factors(p)
    initial, _ = _spinors(mode.m * c_past, mode.k, freqs.omega_past, -s.t_span)
    y, _ = _integrate(_fermion_rhs(p, mode), initial, p, s)
    state = FermionModeState(eta=s.t_span, f=y[0], g=y[1])
    if abs(state.norm - 1) > NORM_WARN_TOL:
        logger.warning(f"Spinor norm drifted to {state.norm!r} for {mode}.")
    return state


def extract_bogoliubov_fermion(
    final: FermionModeState, p: ExpansionParams, mode: ModeParams
) -> BogoliubovCoefficients:
    """Project the final spinor onto the future positive/negative-frequency spinors.

    The pair is rescaled to unit norm. A drift above 1e-10 is logged as a
    warning with its size.
    """
    freqs = frequencies(p, mode)
    _, c_future = asymptotic_scale_factors(p)
    positive, negative = _spinors(
        mode.m * c_future, mode.k, freqs.omega_future, final.eta
    )
    state = np.array([final.f, final.g])
    alpha = complex(np.vdot(positive, state))
    beta = complex(np.vdot(negative, state))
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm_sq - 1) > NORM_WARN_TOL:
        logger.warning(
            f"Renormalizing fermionic coefficients of {mode}: |alpha|^2 + |beta|^2 - 1 "
            f"= {norm_sq - 1:.2e}; tighten rel_tol to reduce the drift."
        )
    norm = math.sqrt(norm_sq)
    return BogoliubovCoefficients(
        alpha=alpha / norm, beta=beta / norm, statistics=Statistics.FERMION
    )


class _HypergeometricMode(typing.NamedTuple):
    """Exponents and 2F1 parameters of a tanh-profile mode function."""

    mu: complex
    nu: complex
    a: complex
    b: complex
    c: complex


def _check_analytic_domain(p: ExpansionParams, mode: ModeParams):
    if not (p.epsilon > 0 and p.rho > 0 and mode.m > 0):
        raise ParameterDomainError(
            "Analytic mode functions need epsilon > 0, rho > 0 and m > 0."
        )


def _log_z_pair(p: ExpansionParams, eta: float) -> tuple[float, float, float, float]:
    """z = (1 + tanh(rho eta)) / 2 and 1 - z, together with their logs."""
    log_z = -float(np.logaddexp(0, -2 * p.rho * eta))
    log_w = -float(np.logaddexp(0, 2 * p.rho * eta))
    return math.exp(log_z), math.exp(log_w), log_z, log_w


def _in_mode(p: ExpansionParams, mode: ModeParams) -> _HypergeometricMode:
    freqs = frequencies(p, mode)
    mu = -0.5j * freqs.omega_past / p.rho
    nu = -0.5j * freqs.omega_future / p.rho
    return _HypergeometricMode(mu, nu, 1 + mu + nu, mu + nu, 1 + 2 * mu)


def analytic_mode_function(p: ExpansionParams, mode: ModeParams, eta: float) -> complex:
    """The in-mode z^mu (1 - z)^nu 2F1(1 + mu + nu, mu + nu; 1 + 2 mu; z).

    z = (1 + tanh(rho eta)) / 2, mu = -i omega_past / (2 rho) and
    nu = -i omega_future / (2 rho), so that Phi -> e^{-i omega_past eta} with
    unit modulus as eta -> -inf.
    """
    return analytic_mode_state(p, mode, eta).value


def analytic_mode_state(
    p: ExpansionParams, mode: ModeParams, eta: float
) -> BosonModeState:
    """The analytic in-mode and its eta-derivative.

    Uses d/dz 2F1(a, b; c; z) = (a b / c) 2F1(a + 1, b + 1; c + 1; z) and
    dz/deta = 2 rho z (1 - z).
    """
    _check_analytic_domain(p, mode)
    h = _in_mode(p, mode)
    z, w, log_z, log_w = _log_z_pair(p, eta)
    prefactor = cmath.exp(h.mu * log_z + h.nu * log_w)
    series = hyp2f1(h.a, h.b, h.c, z, complement=w)
    series_deriv = (h.a * h.b / h.c) * hyp2f1(
        h.a + 1, h.b + 1, h.c + 1, z, complement=w
    )
    derivative = (
        2 * p.rho * prefactor * ((h.mu * w - h.nu * z) * series + z * w * series_deriv)
    )
    return BosonModeState(eta=eta, value=prefactor * series, derivative=derivative)


def analytic_out_mode_function(
    p: ExpansionParams, mode: ModeParams, eta: float
) -> complex:
    """The out-mode that tends to e^{-i omega_future eta} as eta -> +inf.

    z^mu (1 - z)^nu' 2F1(1 + mu + nu', mu + nu'; 1 + 2 nu'; 1 - z) with
    nu' = +i omega_future / (2 rho).
    """
    _check_analytic_domain(p, mode)
    h = _in_mode(p, mode)
    nu = -h.nu
    z, w, log_z, log_w = _log_z_pair(p, eta)
    prefactor = cmath.exp(h.mu * log_z + nu * log_w)
    return prefactor * hyp2f1(1 + h.mu + nu, h.mu + nu, 1 + 2 * nu, w, complement=z)


def analytic_bogoliubov(
    p: ExpansionParams, mode: ModeParams, s: IntegrationSettings | None = None
) -> BogoliubovCoefficients:
    """Project the normalized analytic in-mode onto future plane waves at eta = +T."""
    s = _settings_for(p, s)
    freqs = frequencies(p, mode)
    state = analytic_mode_state(p, mode, s.t_span)
    scale = 1 / math.sqrt(2 * freqs.omega_past)
    normalized = BosonModeState(
        eta=state.eta, value=state.value * scale, derivative=state.derivative * scale
    )
    return extract_bogoliubov_boson(normalized, freqs.omega_future)
