"""Schmidt spectra, von Neumann entropies and entanglement peak finders.

The in-vacuum of the mode pair (k, -k) is a pure state in the out-Fock basis
whose Schmidt weights depend on x = |beta/alpha|^2 alone:

* bosons: |A_n|^2 = (1 - x) x^n, n = 0, 1, 2, ...
* fermions: |A_0|^2 = 1 / (1 + x), |A_1|^2 = x / (1 + x)

All entropies are in bits.
"""

import enum
import functools
import logging
import math
from collections.abc import Callable

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from frw_entanglement import bogoliubov, modesolver
from frw_entanglement.cosmology import (
    ExpansionParams,
    ModeParams,
    Spin,
    Statistics,
    frequencies,
)
from frw_entanglement.utils import BracketingError, ParameterDomainError

logger = logging.getLogger(f"catalystcoop.{__name__}")

TAIL_TOL = 1e-14
MAX_SCHMIDT_TERMS = 1_000_000
M_SEARCH_LOWER = 1e-4
M_SEARCH_XTOL = 1e-6
K_SEARCH_START = 0.25
K_SEARCH_XTOL = 1e-4
BRACKET_GROWTH = 2.0

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

# One representative spin per statistics; every spin of a statistics shares its path
REPRESENTATIVE_SPIN = {Statistics.BOSON: Spin.ONE, Statistics.FERMION: Spin.HALF}


class EntropyMethod(enum.StrEnum):
    """How an entropy value was obtained."""

    CLOSED_FORM = "closed_form"
    DIRECT_SUM = "direct_sum"


class CoefficientSource(enum.StrEnum):
    """Where the mixing ratio of a bosonic mode comes from."""

    ANALYTIC = "analytic"
    ODE = "ode"


class SchmidtSpectrum(BaseModel):
    """Schmidt weights |A_n|^2 of the out-region decomposition of the in-vacuum."""

    model_config = ConfigDict(frozen=True)

    x: float = Field(ge=0)
    statistics: Statistics
    probabilities: list[float]
    truncation_tail: float = Field(ge=0)

    @model_validator(mode="after")
    def check_weights(self):
        """Weights are non-negative and, with the tail, sum to one."""
        if any(prob < 0 for prob in self.probabilities):
            raise ValueError("Schmidt weights must be non-negative.")
        total = math.fsum(self.probabilities) + self.truncation_tail
        if abs(total - 1) > TAIL_TOL:
            raise ValueError(f"Schmidt weights sum to {total!r}, not 1.")
        if self.statistics == Statistics.FERMION and len(self.probabilities) != 2:
            raise ValueError("A fermionic spectrum has exactly two weights.")
        if self.statistics == Statistics.BOSON and any(
            later > earlier
            for earlier, later in zip(
                self.probabilities, self.probabilities[1:], strict=False
            )
        ):
            raise ValueError("Bosonic Schmidt weights must be non-increasing.")
        return self


class EntropyResult(BaseModel):
    """Entanglement entropy of one mode pair."""

    model_config = ConfigDict(frozen=True)

    entropy_bits: float = Field(ge=0)
    x: float = Field(ge=0)
    method: EntropyMethod
    statistics: Statistics

    @model_validator(mode="after")
    def check_fermion_bound(self):
        """A fermionic pair carries at most one bit."""
        if self.statistics == Statistics.FERMION and self.entropy_bits > 1 + 1e-12:
            raise ValueError(f"Fermionic entropy {self.entropy_bits} exceeds 1 bit.")
        return self


def default_n_max(x: float) -> int:
    """Smallest n with x^n < 1e-14, capped at 1e6."""
    if x == 0:
        return 1
    n_max = math.floor(math.log(TAIL_TOL) / math.log(x)) + 1
    return min(max(n_max, 1), MAX_SCHMIDT_TERMS)


def schmidt_spectrum(
    x: float, statistics: Statistics, n_max: int | None = None
) -> SchmidtSpectrum:
    """Schmidt weights for mixing ratio ``x``.

    Bosons get the first ``n_max`` geometric weights (1 - x) x^n and a
    truncation tail of x^n_max. Fermions always get two weights and no tail;
    ``n_max`` is ignored.

    Raises:
        ParameterDomainError: for x < 0, bosonic x >= 1 or n_max < 1.
    """
    if not x >= 0:
        raise ParameterDomainError(f"Mixing ratio must be non-negative, got {x}")
    if statistics == Statistics.FERMION:
        if x > 1:
            logger.warning(f"Fermionic mixing ratio x={x} > 1 (|beta|^2 > 1/2).")
        return SchmidtSpectrum(
            x=x,
            statistics=statistics,
            probabilities=[1 / (1 + x), x / (1 + x)],
            truncation_tail=0.0,
        )

    if x >= 1:
        raise ParameterDomainError(f"Bosonic mixing ratio must be < 1, got {x}")
    if n_max is None:
        n_max = default_n_max(x)
    if n_max < 1:
        raise ParameterDomainError(f"n_max must be at least 1, got {n_max}")
    weights = (1 - x) * np.power(x, np.arange(n_max, dtype=float))
    return SchmidtSpectrum(
        x=x,
        statistics=statistics,
        probabilities=weights.tolist(),
        truncation_tail=x**n_max,
    )


def reduced_density_matrix(spectrum: SchmidtSpectrum) -> npt.NDArray[np.float64]:
    """Single-mode reduced density matrix; diagonal in the out-number basis."""
    return np.diag(spectrum.probabilities)


def binary_entropy(prob: float) -> float:
    """H(p) = -p log2 p - (1 - p) log2(1 - p), with H(0) = H(1) = 0."""
    if not 0 <= prob <= 1:
        raise ParameterDomainError(f"Probability must lie in [0, 1], got {prob}")
    return _plogp(prob) + _plogp(1 - prob)


def _plogp(prob: float) -> float:
    return 0.0 if prob == 0 else -prob * math.log2(prob)


def entropy_boson_closed(x: float) -> EntropyResult:
    """S = log2(x^(x/(x-1)) / (1 - x)) in the stable form -log2(1-x) - x log2(x) / (1-x)."""
    if not 0 <= x < 1:
        raise ParameterDomainError(f"Bosonic entropy needs 0 <= x < 1, got {x}")
    entropy = 0.0
    if x > 0:
        entropy = -math.log1p(-x) / math.log(2) - x * math.log2(x) / (1 - x)
    return EntropyResult(
        entropy_bits=max(entropy, 0.0),
        x=x,
        method=EntropyMethod.CLOSED_FORM,
        statistics=Statistics.BOSON,
    )


def entropy_fermion_closed(x: float) -> EntropyResult:
    """S = log2((1 + x) / x^(x/(1+x))), i.e. the binary entropy of x / (1 + x)."""
    if not x >= 0 or math.isinf(x):
        raise ParameterDomainError(f"Fermionic entropy needs finite x >= 0, got {x}")
    # Both weights computed directly so neither loses precision to 1 - p
    entropy = _plogp(x / (1 + x)) + _plogp(1 / (1 + x))
    return EntropyResult(
        entropy_bits=min(max(entropy, 0.0), 1.0),
        x=x,
        method=EntropyMethod.CLOSED_FORM,
        statistics=Statistics.FERMION,
    )


def entropy_direct(spectrum: SchmidtSpectrum) -> EntropyResult:
    """S = -sum p_n log2 p_n over the listed weights, with no tail correction."""
    weights = np.asarray(spectrum.probabilities)
    weights = weights[weights > 0]
    entropy = float(-np.sum(weights * np.log2(weights)))
    return EntropyResult(
        entropy_bits=max(entropy, 0.0),
        x=spectrum.x,
        method=EntropyMethod.DIRECT_SUM,
        statistics=spectrum.statistics,
    )


def _fermion_mixing_ratio(
    p: ExpansionParams,
    mode: ModeParams,
    settings: modesolver.IntegrationSettings | None,
) -> float:
    if p.rho == 0:
        # Frozen background: nothing to integrate and nothing created
        frequencies(p, mode)
        return 0.0
    final = modesolver.integrate_fermion_system(p, mode, settings)
    return modesolver.extract_bogoliubov_fermion(final, p, mode).x


def _boson_mixing_ratio(
    p: ExpansionParams,
    mode: ModeParams,
    settings: modesolver.IntegrationSettings | None,
    source: CoefficientSource,
) -> float:
    if source == CoefficientSource.ANALYTIC or p.rho == 0:
        return bogoliubov.mixing_ratio_x(p, mode)
    final = modesolver.integrate_boson_mode(p, mode, settings)
    omega_future = frequencies(p, mode).omega_future
    return modesolver.extract_bogoliubov_boson(final, omega_future).x


def entropy_for_mode(
    p: ExpansionParams,
    mode: ModeParams,
    settings: modesolver.IntegrationSettings | None = None,
    method: CoefficientSource = CoefficientSource.ANALYTIC,
) -> EntropyResult:
    """Entanglement entropy of a mode pair, dispatched on the statistics of its spin.

    Spins 0 and 1 share the bosonic path (closed-form x by default, or the ODE
    extraction with ``method=ode``); spins 1/2 and 3/2 share the fermionic path,
    whose x always comes from the ODE extraction. The spin itself never enters
    beyond choosing the statistics.
    """
    if mode.statistics == Statistics.BOSON:
        x = _boson_mixing_ratio(p, mode, settings, CoefficientSource(method))
        return entropy_boson_closed(x)
    x = _fermion_mixing_ratio(p, mode, settings)
    return entropy_fermion_closed(x)


def golden_section_maximize(
    func: Callable[[float], float], lo: float, hi: float, xtol: float
) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``func`` on [lo, hi].

    Returns the best abscissa found and its value; the final bracket is no
    wider than ``xtol``.
    """
    lo, hi = min(lo, hi), max(lo, hi)
    h = hi - lo
    c = lo + INV_PHI_SQUARE * h
    d = lo + INV_PHI * h
    fc = func(c)
    fd = func(d)
    while h > xtol:
        if fc > fd:
            hi, d, fd = d, c, fc
            h = INV_PHI * h
            c = lo + INV_PHI_SQUARE * h
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            h = INV_PHI * h
            d = lo + INV_PHI * h
            fd = func(d)
    if fc > fd:
        return c, fc
    return d, fd


def bracket_maximum(
    func: Callable[[float], float],
    lower: float,
    start: float,
    growth: float = BRACKET_GROWTH,
    max_expansions: int = 40,
) -> tuple[float, float, float]:
    """Walk out from ``lower`` geometrically until ``func`` starts to decrease.

    Evaluates ``lower``, ``start``, ``start * growth``, ... and returns
    (lo, mid, hi) with func(mid) >= func(lo) and func(mid) > func(hi).

    Raises:
        BracketingError: if no decrease shows up within ``max_expansions``
            steps; a function that vanishes at every sample never decreases.
    """
    points = [lower, start]
    values = [func(lower), func(start)]
    for _ in range(max_expansions):
        if values[-1] < values[-2]:
            if len(points) == 2:
                return points[0], points[0], points[1]
            return points[-3], points[-2], points[-1]
        points.append(points[-1] * growth)
        values.append(func(points[-1]))
    raise BracketingError(
        f"No interior maximum found on [{lower}, {points[-1]}]; last values {values[-3:]}"
    )


def _locate_peak(
    func: Callable[[float], float], lower: float, start: float, xtol: float
) -> tuple[float, float]:
    func = functools.cache(func)
    lo, mid, hi = bracket_maximum(func, lower, start)
    peak, value = golden_section_maximize(func, lo, hi, xtol)
    if func(mid) > value:
        peak, value = mid, func(mid)
    edges = (func(lo), func(hi))
    if value < max(edges):
        raise BracketingError(
            f"Search on [{lo}, {hi}] is not unimodal: peak value {value} "
            f"below bracket values {edges}"
        )
    if peak - lower <= xtol:
        raise BracketingError(f"Maximum sits on the lower search bound {lower}.")
    return peak, value


def find_m_max(
    k: float,
    p: ExpansionParams,
    statistics: Statistics = Statistics.BOSON,
    settings: modesolver.IntegrationSettings | None = None,
    xtol: float = M_SEARCH_XTOL,
) -> tuple[float, float]:
    """Mass at which the entanglement of mode k peaks, and the peak entropy.

    Raises:
        ParameterDomainError: if the background is flat.
        BracketingError: if S(m) has no single interior maximum.
    """
    if p.is_flat:
        raise ParameterDomainError("A flat background creates no entanglement to maximize.")
    spin = REPRESENTATIVE_SPIN[Statistics(statistics)]

    def entropy_at(m: float) -> float:
        return entropy_for_mode(p, ModeParams(m=m, k=k, spin=spin), settings).entropy_bits

    m_max, s_max = _locate_peak(entropy_at, M_SEARCH_LOWER, 2 * M_SEARCH_LOWER, xtol)
    logger.debug(f"m_max={m_max} S_max={s_max} for k={k}, {p}")
    return m_max, s_max


def find_k_opt_fermion(
    m: float,
    p: ExpansionParams,
    settings: modesolver.IntegrationSettings | None = None,
    xtol: float = K_SEARCH_XTOL,
) -> tuple[float, float]:
    """Momentum at which fermionic entanglement peaks for mass m, and the peak entropy.

    Raises:
        ParameterDomainError: for m <= 0 (massless fermions are never entangled)
            or a flat background.
        BracketingError: if S(k) has no single interior maximum.
    """
    if not m > 0:
        raise ParameterDomainError("Massless fermions are never entangled; no optimum.")
    if p.is_flat:
        raise ParameterDomainError("A flat background creates no entanglement to maximize.")

    def entropy_at(k: float) -> float:
        mode = ModeParams(m=m, k=k, spin=Spin.HALF)
        return entropy_for_mode(p, mode, settings).entropy_bits

    k_opt, s_max = _locate_peak(entropy_at, 0.0, K_SEARCH_START, xtol)
    logger.debug(f"k_opt={k_opt} S_max={s_max} for m={m}, {p}")
    return k_opt, s_max
