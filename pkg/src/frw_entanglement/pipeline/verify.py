"""Self-checks of the numerics: identities, oracle agreement and qualitative behaviour.

The ``fast`` level only touches closed forms and special functions. The
``full`` level adds every cross-check against the mode integrator.
"""

import cmath
import enum
import itertools
import logging
import math
import time
from collections.abc import Callable

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from frw_entanglement import bogoliubov, modesolver
from frw_entanglement.cosmology import (
    ExpansionParams,
    ModeParams,
    Spin,
    Statistics,
    frequencies,
    scale_factor,
    scale_factor_deriv,
)
from frw_entanglement.entanglement import (
    binary_entropy,
    entropy_boson_closed,
    entropy_direct,
    entropy_fermion_closed,
    entropy_for_mode,
    find_k_opt_fermion,
    find_m_max,
    schmidt_spectrum,
)
from frw_entanglement.specfun import hyp2f1, log_gamma, log_sinh

logger = logging.getLogger(f"catalystcoop.{__name__}")

RANDOM_SEED = 20_240_607

# m x k x epsilon x rho grid shared by the coefficient cross-checks
ORACLE_GRID = list(
    itertools.product(
        [0.2, 1.0, 5.0], [0.0, 0.5, 2.0, 10.0], [0.5, 2.0, 8.0], [0.5, 2.0, 10.0]
    )
)

# (omega_past / rho, omega_future / rho) pairs for the hypergeometric mode
# parameters, up to the heavy slow corner of the oracle grid
MODE_FREQUENCIES = [(1.0, 2.0), (0.5, 4.3), (2.0, 3.0), (22.36, 45.83)]


class VerifyLevel(enum.StrEnum):
    """How much of the suite to run."""

    FAST = "fast"
    FULL = "full"


class CheckResult(BaseModel):
    """Outcome of one check; passes when |actual - expected| <= tol."""

    model_config = ConfigDict(populate_by_name=True)

    check: str
    params: dict[str, float | str] = {}
    expected: float
    actual: float
    tol: float
    passed: bool = Field(alias="pass")
    notes: list[str] | None = None


class VerifyReport(BaseModel):
    """All check outcomes of one verify run."""

    level: VerifyLevel
    checks: list[CheckResult]

    @computed_field
    @property
    def overall(self) -> bool:
        """True only if every check passed."""
        return all(check.passed for check in self.checks)

    def get_failed_checks(self) -> list[CheckResult]:
        """Checks that did not pass."""
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> str:
        """Serialize with ``pass`` as the key of each check's flag."""
        return self.model_dump_json(by_alias=True, indent=2)


def _within(
    check: str, expected: float, actual: float, tol: float, **params: float | str
) -> CheckResult:
    return CheckResult(
        check=check,
        params=params,
        expected=expected,
        actual=actual,
        tol=tol,
        passed=abs(actual - expected) <= tol,
    )


def _holds(check: str, condition: bool, **params: float | str) -> CheckResult:
    return CheckResult(
        check=check,
        params=params,
        expected=1.0,
        actual=float(condition),
        tol=0.0,
        passed=bool(condition),
    )


def _relative_difference(value: float, reference: float) -> float:
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _random_points(count: int) -> list[tuple[float, float, float, float]]:
    rng = np.random.default_rng(RANDOM_SEED)
    return [
        (
            float(rng.uniform(0.1, 5)),
            float(rng.uniform(0, 5)),
            float(rng.uniform(0.1, 8)),
            float(rng.uniform(0.2, 10)),
        )
        for _ in range(count)
    ]


def _entropy(m: float, k: float, epsilon: float, rho: float, spin: Spin) -> float:
    return entropy_for_mode(
        ExpansionParams(epsilon=epsilon, rho=rho), ModeParams(m=m, k=k, spin=spin)
    ).entropy_bits


def _strictly_increasing(values: list[float]) -> bool:
    return all(later > earlier for earlier, later in itertools.pairwise(values))


def check_special_functions() -> list[CheckResult]:
    """Known values and identities of log_gamma and hyp2f1."""
    y = 1.3
    z = 0.3 + 0.7j
    reflection = cmath.exp(log_gamma(z) + log_gamma(1 - z)) * cmath.sin(math.pi * z)
    a, b, c = 0.3 + 1j, -0.2j, 1.1 + 0.5j
    euler = (0.3) ** (c - a - b) * hyp2f1(c - a, c - b, c, 0.7)
    return [
        _within("log_gamma_factorial", math.log(24), log_gamma(5).real, 1e-13, z=5),
        _within(
            "log_gamma_half", 0.5 * math.log(math.pi), log_gamma(0.5).real, 1e-14, z=0.5
        ),
        _within(
            "log_gamma_imaginary_modulus",
            math.log(math.pi / (y * math.sinh(math.pi * y))),
            2 * log_gamma(1j * y).real,
            1e-12,
            y=y,
        ),
        _within(
            "log_gamma_reflection", 0.0, abs(reflection / math.pi - 1), 1e-12, z=str(z)
        ),
        _within(
            "hyp2f1_log_identity",
            -math.log(0.7) / 0.3,
            hyp2f1(1, 1, 2, 0.3).real,
            1e-14,
            z=0.3,
        ),
        _within(
            "hyp2f1_euler_transform",
            0.0,
            abs(hyp2f1(a, b, c, 0.7) / euler - 1),
            1e-12,
            z=0.7,
        ),
    ]


def _mode_parameters(w_past: float, w_future: float) -> tuple[complex, complex, complex]:
    mu = -0.5j * w_past
    nu = -0.5j * w_future
    return 1 + mu + nu, mu + nu, 1 + 2 * mu


def check_log_gamma_identities() -> list[CheckResult]:
    """Recurrence, |Gamma(1 + i y)|^2 and accuracy far from the real axis."""
    rng = np.random.default_rng(RANDOM_SEED)
    zs = rng.uniform(0.5, 20, 1000) + 1j * rng.uniform(-100, 100, 1000)
    worst_recurrence = max(
        abs(cmath.exp(log_gamma(z + 1) - log_gamma(z)) / z - 1) for z in zs
    )
    results = [
        _within("log_gamma_recurrence", 0.0, worst_recurrence, 1e-12, samples=1000)
    ]
    for y in (0.1, 1.0, 10.0, 50.0):
        log_ratio = (
            2 * log_gamma(1 + 1j * y).real
            - math.log(math.pi * y)
            + log_sinh(math.pi * y)
        )
        results.append(
            _within("log_gamma_modulus_identity", 0.0, abs(math.expm1(log_ratio)), 1e-11, y=y)
        )
    for z in (0.5 + 1e4j, -49.5 + 1e4j, 50 - 1e4j):
        with mpmath.workdps(30):
            expected = complex(mpmath.loggamma(mpmath.mpc(z)))
        results.append(
            _within(
                "log_gamma_far_from_axis",
                0.0,
                abs(log_gamma(z) - expected) / abs(expected),
                1e-12,
                z=str(z),
            )
        )
    return results


def check_hyp2f1_consistency() -> list[CheckResult]:
    """Continuity across z = 1/2 and the Euler transform on the mode parameters."""
    rng = np.random.default_rng(RANDOM_SEED)
    h = 1e-6
    results = []
    for w_past, w_future in MODE_FREQUENCIES:
        a, b, c = _mode_parameters(w_past, w_future)
        slope = a * b / c * hyp2f1(a + 1, b + 1, c + 1, 0.5)
        jump = hyp2f1(a, b, c, 0.5 + h) - hyp2f1(a, b, c, 0.5 - h) - 2 * h * slope
        results.append(
            _within(
                "hyp2f1_continuity",
                0.0,
                abs(jump) / abs(hyp2f1(a, b, c, 0.5)),
                1e-8,
                w_past=w_past,
                w_future=w_future,
            )
        )
        worst = 0.0
        for z in rng.uniform(0.02, 0.98, 5):
            direct = hyp2f1(a, b, c, z)
            transformed = cmath.exp((c - a - b) * math.log(1 - z)) * hyp2f1(
                c - a, c - b, c, z
            )
            worst = max(worst, abs(direct - transformed) / abs(direct))
        results.append(
            _within(
                "hyp2f1_euler_transform_modes",
                0.0,
                worst,
                1e-9,
                w_past=w_past,
                w_future=w_future,
            )
        )
    return results


def check_scale_factor() -> list[CheckResult]:
    """Monotonicity, the defining identity and the derivative of C(eta)."""
    rng = np.random.default_rng(RANDOM_SEED)
    etas = np.linspace(-20, 20, 1000)
    monotone = True
    worst_identity = 0.0
    worst_derivative = 0.0
    h = 1e-6
    for epsilon, rho in zip(rng.uniform(0, 10, 20), rng.uniform(0, 10, 20), strict=True):
        p = ExpansionParams(epsilon=epsilon, rho=rho)
        values = scale_factor(p, etas)
        monotone = monotone and bool(np.all(np.diff(values) >= 0))
        identity = values**2 - 1 - epsilon * (1 + np.tanh(rho * etas))
        worst_identity = max(worst_identity, float(np.max(np.abs(identity))))
        points = np.linspace(-2, 2, 9)
        numeric = (scale_factor(p, points + h) - scale_factor(p, points - h)) / (2 * h)
        worst_derivative = max(
            worst_derivative,
            float(np.max(np.abs(scale_factor_deriv(p, points) - numeric))),
        )
    return [
        _holds("scale_factor_monotone", monotone, samples=20),
        _within("scale_factor_identity", 0.0, worst_identity, 1e-12, samples=20),
        _within("scale_factor_deriv_vs_difference", 0.0, worst_derivative, 1e-7),
        _within(
            "scale_factor_deriv_flat",
            0.0,
            float(scale_factor_deriv(ExpansionParams(epsilon=0.0, rho=2.0), 0.7)),
            1e-15,
            epsilon=0.0,
        ),
        _within(
            "scale_factor_deriv_midpoint",
            2 / math.sqrt(3),
            float(scale_factor_deriv(ExpansionParams(epsilon=2.0, rho=2.0), 0.0)),
            1e-15,
            epsilon=2.0,
            rho=2.0,
        ),
    ]


def check_mixing_ratio_in_k() -> list[CheckResult]:
    """x falls strictly with k at every (m, epsilon, rho) of the oracle grid."""
    monotone = True
    for m, epsilon, rho in itertools.product(
        *(sorted({point[i] for point in ORACLE_GRID}) for i in (0, 2, 3))
    ):
        p = ExpansionParams(epsilon=epsilon, rho=rho)
        x = [
            bogoliubov.mixing_ratio_x(p, ModeParams(m=m, k=k))
            for k in sorted({point[1] for point in ORACLE_GRID})
        ]
        monotone = monotone and _strictly_increasing(x[::-1])
    return [_holds("mixing_ratio_decreasing_in_k", monotone)]


def check_gamma_vs_sinh() -> list[CheckResult]:
    """Canonicalized Gamma-function coefficients against the sinh closed form."""
    worst_x = 0.0
    worst_norm = 0.0
    for m, k, epsilon, rho in ORACLE_GRID:
        p = ExpansionParams(epsilon=epsilon, rho=rho)
        mode = ModeParams(m=m, k=k, spin=Spin.ONE)
        gamma_x = bogoliubov.canonical_boson_coefficients(p, mode).x
        sinh_x = bogoliubov.mixing_ratio_x(p, mode)
        worst_x = max(worst_x, _relative_difference(gamma_x, sinh_x))

        first, second = bogoliubov.paper_alpha_beta(p, mode)
        freqs = frequencies(p, mode)
        scale_sq = freqs.omega_future / freqs.omega_past
        residual = scale_sq * (abs(second) ** 2 - abs(first) ** 2) - 1
        worst_norm = max(worst_norm, abs(residual))
    points = len(ORACLE_GRID)
    return [
        _within("gamma_vs_sinh", 0.0, worst_x, 1e-10, points=points),
        _within("boson_normalization_gamma", 0.0, worst_norm, 1e-8, points=points),
    ]


def check_entropy_forms() -> list[CheckResult]:
    """Closed-form entropies against direct Schmidt sums, and their shape in x."""
    half = entropy_boson_closed(0.5).entropy_bits
    one = entropy_fermion_closed(1.0).entropy_bits
    results = [
        _within("boson_entropy_half", 2.0, half, 1e-12, x=0.5),
        _within("fermion_entropy_one", 1.0, one, 1e-12, x=1.0),
    ]
    for x in (0.01, 0.1, 0.5, 0.9, 0.99):
        direct = entropy_direct(schmidt_spectrum(x, Statistics.BOSON))
        results.append(
            _within(
                "boson_closed_vs_direct",
                entropy_boson_closed(x).entropy_bits,
                direct.entropy_bits,
                1e-12,
                x=x,
            )
        )
    for x in (0.1, 1 / 3, 1.0, 3.0):
        direct = entropy_direct(schmidt_spectrum(x, Statistics.FERMION))
        results.append(
            _within(
                "fermion_closed_vs_direct",
                entropy_fermion_closed(x).entropy_bits,
                direct.entropy_bits,
                1e-12,
                x=x,
            )
        )

    rng = np.random.default_rng(RANDOM_SEED)
    xs = rng.uniform(0, 10, 100)
    worst = max(
        abs(entropy_fermion_closed(x).entropy_bits - binary_entropy(x / (1 + x)))
        for x in xs
    )
    results.append(
        _within("fermion_binary_entropy_identity", 0.0, worst, 1e-12, samples=100)
    )

    boson_curve = [
        entropy_boson_closed(x).entropy_bits for x in np.linspace(0.01, 0.99, 50)
    ]
    fermion_curve = [
        entropy_fermion_closed(x).entropy_bits for x in np.linspace(0.02, 1, 50)
    ]
    results += [
        _holds("boson_entropy_increasing_in_x", _strictly_increasing(boson_curve)),
        _holds("fermion_entropy_increasing_in_x", _strictly_increasing(fermion_curve)),
    ]
    return results


def check_boson_null_results() -> list[CheckResult]:
    """No entanglement for massless bosons or a flat background."""
    results = [
        _within(
            "boson_massless_null",
            0.0,
            _entropy(0.0, k, 2.0, 2.0, Spin.ONE),
            1e-10,
            m=0.0,
            k=k,
            epsilon=2.0,
            rho=2.0,
        )
        for k in (0.5, 2.0)
    ]
    no_volume = _entropy(1.0, 0.5, 0.0, 2.0, Spin.ONE)
    no_rapidity = _entropy(1.0, 0.5, 2.0, 0.0, Spin.ONE)
    results += [
        _within("boson_flat_null", 0.0, no_volume, 1e-10, epsilon=0.0, rho=2.0),
        _within("boson_flat_null", 0.0, no_rapidity, 1e-10, epsilon=2.0, rho=0.0),
    ]
    return results


def check_boson_spin_invariance() -> list[CheckResult]:
    """Spin 0 and spin 1 give bit-identical entropies."""
    worst = max(
        abs(_entropy(m, k, eps, rho, Spin.ZERO) - _entropy(m, k, eps, rho, Spin.ONE))
        for m, k, eps, rho in _random_points(10)
    )
    return [_within("boson_spin_invariance", 0.0, worst, 0.0, samples=10)]


def check_mass_momentum_plane() -> list[CheckResult]:
    """S decreases with k at fixed m, and the peak mass grows with k."""
    p = ExpansionParams(epsilon=2.0, rho=2.0)
    curve = [_entropy(1.0, k, 2.0, 2.0, Spin.ONE) for k in np.arange(0, 5.25, 0.25)]
    m_max_low, _ = find_m_max(0.1, p)
    m_max_high, _ = find_m_max(1.0, p)
    return [
        _holds(
            "boson_entropy_decreasing_in_k", _strictly_increasing(curve[::-1]), m=1.0
        ),
        _holds(
            "m_max_increasing_in_k",
            m_max_high > m_max_low,
            m_max_low=m_max_low,
            m_max_high=m_max_high,
        ),
    ]


def check_volume_rapidity_plane() -> list[CheckResult]:
    """S increases with both epsilon and rho at m=1, k=0.1."""
    values = [0.5, 1.0, 2.0, 4.0]
    along_epsilon = [_entropy(1.0, 0.1, eps, 2.0, Spin.ONE) for eps in values]
    along_rho = [_entropy(1.0, 0.1, 2.0, rho, Spin.ONE) for rho in values]
    return [
        _holds(
            "entropy_increasing_in_epsilon", _strictly_increasing(along_epsilon), rho=2.0
        ),
        _holds(
            "entropy_increasing_in_rho", _strictly_increasing(along_rho), epsilon=2.0
        ),
    ]


def check_volume_peaks() -> list[CheckResult]:
    """The peak entropy grows with epsilon at k=0.1, rho=10 while its mass falls."""
    peaks = [
        find_m_max(0.1, ExpansionParams(epsilon=eps, rho=10.0)) for eps in (1, 2, 4, 8)
    ]
    m_max = [peak[0] for peak in peaks]
    s_max = [peak[1] for peak in peaks]
    return [
        _holds("peak_entropy_increasing_in_epsilon", _strictly_increasing(s_max)),
        _holds("m_max_decreasing_in_epsilon", _strictly_increasing(m_max[::-1])),
    ]


def check_analytic_projection() -> list[CheckResult]:
    """Projecting the analytic in-mode at eta = +T reproduces the sinh closed form."""
    p = ExpansionParams(epsilon=1.0, rho=1.0)
    mode = ModeParams(m=1.0, k=0.5, spin=Spin.ONE)
    projected = modesolver.analytic_bogoliubov(p, mode).x
    return [
        _within(
            "analytic_projection_vs_sinh",
            bogoliubov.mixing_ratio_x(p, mode),
            projected,
            1e-8,
            m=1.0,
            k=0.5,
            epsilon=1.0,
            rho=1.0,
        )
    ]


def _boson_beta_sq(
    p: ExpansionParams, mode: ModeParams, s: modesolver.IntegrationSettings
) -> float:
    final = modesolver.integrate_boson_mode(p, mode, s)
    omega_future = frequencies(p, mode).omega_future
    return modesolver.extract_bogoliubov_boson(final, omega_future).beta_sq


def _fermion_x(
    p: ExpansionParams, mode: ModeParams, s: modesolver.IntegrationSettings
) -> float:
    final = modesolver.integrate_fermion_system(p, mode, s)
    return modesolver.extract_bogoliubov_fermion(final, p, mode).x


def check_integration_convergence() -> list[CheckResult]:
    """Results are insensitive to tolerances and span, and flat space is free."""
    p = ExpansionParams(epsilon=2.0, rho=2.0)
    boson = ModeParams(m=1.0, k=0.5)
    settings = modesolver.IntegrationSettings.for_expansion(p)
    reference = _boson_beta_sq(p, boson, settings)
    halved = modesolver.IntegrationSettings.for_expansion(
        p, rel_tol=settings.rel_tol / 2, abs_tol=settings.abs_tol / 2
    )
    longer = modesolver.IntegrationSettings.for_expansion(
        p, t_span=1.25 * settings.t_span
    )
    results = [
        _within(
            "beta_sq_halved_tolerances",
            reference,
            _boson_beta_sq(p, boson, halved),
            1e-8,
            m=1.0,
            k=0.5,
        ),
        _within(
            "beta_sq_longer_span",
            reference,
            _boson_beta_sq(p, boson, longer),
            1e-7,
            m=1.0,
            k=0.5,
        ),
    ]

    fermion = ModeParams(m=1.0, k=1.0, spin=Spin.HALF)
    x = {
        rel_tol: _fermion_x(
            p, fermion, modesolver.IntegrationSettings.for_expansion(p, rel_tol=rel_tol)
        )
        for rel_tol in (1e-8, 1e-10, 1e-12)
    }
    spread = (max(x.values()) - min(x.values())) / x[1e-12]
    results.append(
        _within("fermion_x_rel_tol_convergence", 0.0, spread, 1e-6, m=1.0, k=1.0)
    )

    flat = ExpansionParams(epsilon=1e-12, rho=1.0)
    final = modesolver.integrate_boson_mode(flat, boson)
    omega = frequencies(flat, boson).omega_past
    plane_wave = cmath.exp(-1j * omega * final.eta) / math.sqrt(2 * omega)
    results.append(
        _within(
            "free_evolution", 0.0, abs(final.value - plane_wave), 1e-8, epsilon=1e-12
        )
    )
    return results


def check_ode_oracle() -> list[CheckResult]:
    """Mode-integrator coefficients against the Gamma route, with normalizations."""
    worst_x = 0.0
    worst_wronskian = 0.0
    worst_fermion_norm = 0.0
    for m, k, epsilon, rho in ORACLE_GRID:
        p = ExpansionParams(epsilon=epsilon, rho=rho)
        boson = ModeParams(m=m, k=k, spin=Spin.ONE)
        final_boson = modesolver.integrate_boson_mode(p, boson)
        worst_wronskian = max(worst_wronskian, abs(final_boson.wronskian - 1j))
        # Construction enforces ||alpha|^2 - |beta|^2 - 1| <= 1e-8
        extracted = modesolver.extract_bogoliubov_boson(
            final_boson, frequencies(p, boson).omega_future
        )
        gamma_x = bogoliubov.canonical_boson_coefficients(p, boson).x
        worst_x = max(worst_x, abs(extracted.x - gamma_x))

        fermion = ModeParams(m=m, k=k, spin=Spin.HALF)
        final = modesolver.integrate_fermion_system(p, fermion)
        worst_fermion_norm = max(worst_fermion_norm, abs(final.norm - 1))
    points = len(ORACLE_GRID)
    return [
        _within("gamma_vs_ode", 0.0, worst_x, 1e-6, points=points),
        _within("boson_wronskian_ode", 0.0, worst_wronskian, 1e-9, points=points),
        _within(
            "fermion_normalization_ode", 0.0, worst_fermion_norm, 1e-10, points=points
        ),
    ]


def check_wronskian() -> list[CheckResult]:
    """The integrated bosonic mode keeps its Wronskian at i."""
    p = ExpansionParams(epsilon=2.0, rho=2.0)
    final = modesolver.integrate_boson_mode(p, ModeParams(m=1.0, k=0.5))
    drift = abs(final.wronskian - 1j)
    return [_within("boson_wronskian", 0.0, drift, 1e-9, m=1.0, k=0.5)]


def check_fermion_null_results() -> list[CheckResult]:
    """No entanglement for massless fermions, a flat background or zero momentum."""
    results = [
        _within(
            "fermion_massless_null",
            0.0,
            _entropy(0.0, k, 2.0, 2.0, Spin.HALF),
            1e-10,
            m=0.0,
            k=k,
            epsilon=2.0,
            rho=2.0,
        )
        for k in (0.5, 2.0)
    ]
    flat = _entropy(1.0, 0.5, 0.0, 1.0, Spin.HALF)
    at_rest = _entropy(1.0, 0.0, 2.0, 2.0, Spin.HALF)
    results += [
        _within("fermion_flat_null", 0.0, flat, 1e-10, epsilon=0.0, rho=1.0),
        _within("fermion_zero_momentum_null", 0.0, at_rest, 1e-8, k=0.0),
    ]
    return results


def check_fermion_momentum_peak() -> list[CheckResult]:
    """Fermionic entanglement peaks at a non-zero momentum and then dies away."""
    k_opt, s_max = find_k_opt_fermion(1.0, ExpansionParams(epsilon=2.0, rho=2.0))
    far = _entropy(1.0, 20 * k_opt, 2.0, 2.0, Spin.HALF)
    return [
        _holds("fermion_k_opt_positive", k_opt > 0, k_opt=k_opt),
        _holds("fermion_peak_entropy", s_max > 0.01, entropy_bits=s_max),
        _holds(
            "fermion_entropy_decays_in_k",
            far < 0.05 * s_max,
            k=20 * k_opt,
            entropy_bits=far,
        ),
    ]


def check_mode_function() -> list[CheckResult]:
    """The hypergeometric in-mode matches the integrated one along the whole run."""
    p = ExpansionParams(epsilon=1.0, rho=1.0)
    mode = ModeParams(m=1.0, k=0.5)
    settings = modesolver.IntegrationSettings.for_expansion(p)
    etas = np.linspace(-settings.t_span, settings.t_span, 200)
    integrated = modesolver.integrate_boson_trajectory(p, mode, etas, settings)
    scale = 1 / math.sqrt(2 * frequencies(p, mode).omega_past)
    worst = max(
        abs(modesolver.analytic_mode_function(p, mode, eta) * scale - phi)
        for eta, phi in zip(etas, integrated, strict=True)
    )
    return [_within("analytic_vs_ode_mode_function", 0.0, worst, 1e-6, points=200)]


def check_fermion_spin_invariance() -> list[CheckResult]:
    """Spin 1/2 and spin 3/2 give bit-identical entropies."""
    worst = max(
        abs(
            _entropy(m, k, eps, rho, Spin.HALF)
            - _entropy(m, k, eps, rho, Spin.THREE_HALVES)
        )
        for m, k, eps, rho in _random_points(10)
    )
    return [_within("fermion_spin_invariance", 0.0, worst, 0.0, samples=10)]


FAST_CHECKS: list[Callable[[], list[CheckResult]]] = [
    check_special_functions,
    check_log_gamma_identities,
    check_hyp2f1_consistency,
    check_scale_factor,
    check_gamma_vs_sinh,
    check_mixing_ratio_in_k,
    check_entropy_forms,
    check_boson_null_results,
    check_boson_spin_invariance,
    check_mass_momentum_plane,
    check_volume_rapidity_plane,
    check_volume_peaks,
    check_analytic_projection,
]

FULL_CHECKS: list[Callable[[], list[CheckResult]]] = FAST_CHECKS + [
    check_integration_convergence,
    check_ode_oracle,
    check_wronskian,
    check_fermion_null_results,
    check_fermion_momentum_peak,
    check_mode_function,
    check_fermion_spin_invariance,
]


def _run_check(check: Callable[[], list[CheckResult]]) -> list[CheckResult]:
    start = time.perf_counter()
    try:
        results = check()
    except Exception as error:
        logger.error(f"{check.__name__} raised {error!r}")
        return [
            CheckResult(
                check=check.__name__.removeprefix("check_"),
                expected=1.0,
                actual=float("nan"),
                tol=0.0,
                passed=False,
                notes=[f"{type(error).__name__}: {error}"],
            )
        ]
    elapsed = time.perf_counter() - start
    failed = [result.check for result in results if not result.passed]
    if failed:
        logger.warning(f"{check.__name__}: failed {failed} ({elapsed:.2f} s)")
    else:
        logger.info(f"{check.__name__}: {len(results)} passed ({elapsed:.2f} s)")
    return results


def run_verify(level: VerifyLevel = VerifyLevel.FAST) -> VerifyReport:
    """Run the fast or full suite and collect every outcome."""
    level = VerifyLevel(level)
    checks = FAST_CHECKS if level == VerifyLevel.FAST else FULL_CHECKS
    logger.info(f"Running {len(checks)} {level} verification groups.")
    results = [result for check in checks for result in _run_check(check)]
    report = VerifyReport(level=level, checks=results)
    logger.info(
        f"Verification {'passed' if report.overall else 'FAILED'}: "
        f"{len(results) - len(report.get_failed_checks())}/{len(results)} checks."
    )
    return report
