"""Complex special functions needed by the analytic mode and Bogoliubov formulas.

Everything here is a pure function of its arguments. Gamma ratios are always
assembled in log space and exponentiated once, because the Gamma factors of the
Bogoliubov coefficients have purely imaginary arguments whose moduli under- and
overflow long before their ratios do.
"""

import cmath
import logging
import math
from collections.abc import Iterable

import mpmath

from frw_entanglement.utils import (
    ConvergenceError,
    NumericOverflowError,
    ParameterDomainError,
    PoleError,
)

logger = logging.getLogger(f"catalystcoop.{__name__}")

# Godfrey's Lanczos coefficients for g = 607/128 with 15 terms.
LANCZOS_G = 607 / 128
LANCZOS_COEFFICIENTS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)
LOG_PI = math.log(math.pi)

POLE_TOLERANCE = 1e-14
SERIES_RTOL = 1e-16
SERIES_SMALL_TERMS = 3
SERIES_MAX_TERMS = 1_000_000
# Largest exponent that still exponentiates to a finite double
MAX_LOG_MAGNITUDE = 709.0
# A double precision sum whose largest term exceeds it by more than this is
# re-evaluated in extended precision.
CANCELLATION_LIMIT = 1e3
EXTENDED_BASE_DPS = 25
MAX_EXTENDED_DPS = 400


def is_pole(z: complex, tol: float = POLE_TOLERANCE) -> bool:
    """Return True if ``z`` lies within ``tol`` of a non-positive integer."""
    nearest = round(z.real)
    return nearest <= 0 and abs(z - nearest) < tol


def _log_gamma_lanczos(z: complex) -> complex:
    """Lanczos approximation, valid for Re z >= 1/2."""
    z -= 1
    series = LANCZOS_COEFFICIENTS[0]
    for k, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + k)
    t = z + LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) on the branch that is continuous in each half plane."""
    if z.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()
    # sin(pi z) = (i/2) exp(-i pi z) (1 - exp(2 i pi z)); exact, and free of
    # overflow for large Im z.
    branch = (
        -1j * math.pi * z
        - math.log(2)
        + 0.5j * math.pi
        + cmath.log(1 - cmath.exp(2j * math.pi * z))
    )
    if z.imag >= 1:
        return branch
    # Near the real axis 1 - exp(2 i pi z) cancels; take the principal log of
    # sin directly and shift it onto the continuous branch.
    principal = cmath.log(cmath.sin(math.pi * z))
    turns = round((branch - principal).imag / (2 * math.pi))
    return principal + 2j * math.pi * turns


def log_gamma(z: complex) -> complex:
    """Logarithm of the Gamma function for complex argument.

    Returns the branch that is analytic on the plane cut along the negative real
    axis (the same branch as ``scipy.special.loggamma``). Uses the Lanczos
    approximation for Re z >= 1/2 and the reflection formula below that.

    Raises:
        PoleError: if ``z`` is within 1e-14 of a non-positive integer.
        ParameterDomainError: if ``z`` is not finite.
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise ParameterDomainError(f"log_gamma needs a finite argument, got {z}")
    if is_pole(z):
        raise PoleError(f"Gamma function has a pole at {z}")
    if z.real < 0.5:
        return LOG_PI - _log_sin_pi(z) - _log_gamma_lanczos(1 - z)
    return _log_gamma_lanczos(z)


def log_sinh(y: float) -> float:
    """Overflow-free ln(sinh(y)) for y > 0."""
    if not y > 0:
        raise ParameterDomainError(f"log_sinh is defined for y > 0, got {y}")
    return y + math.log(-math.expm1(-2 * y)) - math.log(2)


def gamma_ratio(numerator: Iterable[complex], denominator: Iterable[complex]) -> complex:
    """Evaluate prod(Gamma(numerator)) / prod(Gamma(denominator)) in log space."""
    log_value = sum(log_gamma(z) for z in numerator) - sum(
        log_gamma(z) for z in denominator
    )
    if log_value.real > MAX_LOG_MAGNITUDE:
        raise NumericOverflowError(f"Gamma ratio exceeds double range: log = {log_value}")
    return cmath.exp(log_value)


def _gauss_series(a: complex, b: complex, c: complex, z: float) -> tuple[complex, float]:
    """Sum the Gauss series for 2F1 until the tail is negligible.

    Returns the sum and the modulus of its largest term. Their ratio bounds the
    digits lost to cancellation.
    """
    term = 1 + 0j
    total = term
    largest = 1.0
    small_terms = 0
    for n in range(SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        largest = max(largest, abs(term))
        if term == 0:
            # a or b is a non-positive integer: the series is a polynomial
            return total, largest
        if abs(term) < SERIES_RTOL * abs(total):
            small_terms += 1
            if small_terms == SERIES_SMALL_TERMS:
                return total, largest
        else:
            small_terms = 0
    raise ConvergenceError(
        f"2F1 series did not converge in {SERIES_MAX_TERMS} terms "
        f"(a={a}, b={b}, c={c}, z={z})"
    )


def _connection_term(
    numerator: list[complex], denominator: list[complex], log_power: complex
) -> complex:
    """One Gamma-weighted branch of the z -> 1 - z connection formula."""
    if any(is_pole(d) for d in denominator):
        # 1/Gamma vanishes at its poles
        return 0j
    log_value = (
        sum(log_gamma(z) for z in numerator)
        - sum(log_gamma(z) for z in denominator)
        + log_power
    )
    return cmath.exp(log_value)


def hyp2f1(
    a: complex, b: complex, c: complex, z: float, complement: float | None = None
) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real 0 <= z < 1.

    For z <= 1/2 the Gauss series is summed directly. Above 1/2 the linear
    z -> 1 - z connection formula is used, which needs c - a - b to be a
    non-integer. For the mode functions of the tanh expansion c - a - b is
    -i omega / rho: purely imaginary and non-zero.

    With large imaginary parameters (omega / rho well above 1) either route
    can cancel catastrophically in double precision. When the largest summed
    term exceeds the result by more than ``CANCELLATION_LIMIT`` the value is
    recomputed with mpmath at a precision covering the lost digits.

    Args:
        a: first numerator parameter.
        b: second numerator parameter.
        c: denominator parameter.
        z: real argument in [0, 1).
        complement: 1 - z, when the caller knows it more accurately than
            ``1 - z`` evaluates in floating point (z within ~1e-8 of 1).

    Raises:
        ParameterDomainError: if z is outside [0, 1), or z > 1/2 and c - a - b
            is an integer.
        PoleError: if c is a non-positive integer.
        ConvergenceError: if a series needs more than 1e6 terms.
    """
    a, b, c = complex(a), complex(b), complex(c)
    w = 1 - z if complement is None else complement
    if not (0 <= z <= 1 and w > 0):
        raise ParameterDomainError(f"hyp2f1 needs 0 <= z < 1, got z={z}")
    if is_pole(c):
        raise PoleError(f"hyp2f1 is undefined for non-positive integer c={c}")
    if z == 0:
        return 1 + 0j
    if z <= 0.5:
        total, scale = _gauss_series(a, b, c, z)
    else:
        total, scale = _connection_sum(a, b, c, w)
    if scale > CANCELLATION_LIMIT * abs(total):
        loss = scale / abs(total) if total else math.inf
        return _hyp2f1_extended(a, b, c, z, w, loss)
    return total


def _connection_sum(a: complex, b: complex, c: complex, w: float) -> tuple[complex, float]:
    """The z -> 1 - z connection formula, with the largest summed contribution."""
    s = c - a - b
    if abs(s - round(s.real)) < 1e-12:
        raise ParameterDomainError(
            f"Connection formula needs non-integer c - a - b, got {s}"
        )
    first = _connection_term([c, s], [c - a, c - b], 0j)
    second = _connection_term([c, -s], [a, b], s * math.log(w))
    total = 0j
    scale = 0.0
    if first != 0:
        value, largest = _gauss_series(a, b, 1 - s, w)
        total += first * value
        scale = max(scale, abs(first) * largest)
    if second != 0:
        value, largest = _gauss_series(c - a, c - b, 1 + s, w)
        total += second * value
        scale = max(scale, abs(second) * largest)
    return total, scale


def _hyp2f1_extended(
    a: complex, b: complex, c: complex, z: float, w: float, loss: float
) -> complex:
    """Re-evaluate 2F1 with enough extra digits to absorb those lost to cancellation.

    Large imaginary parameters make the terms rotate in phase, so the largest
    ones exceed the sum by ``loss``.
    """
    extra = math.ceil(math.log10(loss)) if math.isfinite(loss) else MAX_EXTENDED_DPS
    dps = min(MAX_EXTENDED_DPS, EXTENDED_BASE_DPS + extra)
    logger.debug(f"2F1 at z={z} cancels by {loss:.3g}; summing with {dps} digits.")
    with mpmath.workdps(dps):
        # The complement is the exact input near z = 1
        z_exact = 1 - mpmath.mpf(w) if w < 0.5 else mpmath.mpf(z)
        try:
            value = mpmath.hyp2f1(
                mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(c), z_exact
            )
        except mpmath.libmp.NoConvergence as err:
            raise ConvergenceError(
                f"2F1 did not converge with {dps} digits (a={a}, b={b}, c={c}, z={z})"
            ) from err
    return complex(value)
