"""Entanglement of particle pairs created by a tanh-shaped 1+1 dimensional FRW expansion.

The scale factor C^2(eta) = 1 + epsilon (1 + tanh(rho eta)) joins two flat
regions. Modes that start as positive-frequency plane waves in the past end
up as mixtures of positive and negative frequencies in the future; the
mixing fixes the Schmidt spectrum, and so the von Neumann entropy, of each
(k, -k) pair.
"""

from frw_entanglement.bogoliubov import (
    BogoliubovCoefficients,
    canonical_boson_coefficients,
    mean_particle_number,
    mixing_ratio_x,
    paper_alpha_beta,
)
from frw_entanglement.cosmology import (
    ExpansionParams,
    Frequencies,
    ModeParams,
    Spin,
    Statistics,
    frequencies,
    scale_factor,
    scale_factor_deriv,
)
from frw_entanglement.entanglement import (
    EntropyResult,
    SchmidtSpectrum,
    entropy_boson_closed,
    entropy_direct,
    entropy_fermion_closed,
    entropy_for_mode,
    find_k_opt_fermion,
    find_m_max,
    schmidt_spectrum,
)
from frw_entanglement.modesolver import IntegrationSettings
from frw_entanglement.utils import (
    BracketingError,
    ConvergenceError,
    DegenerateModeError,
    FrwEntanglementError,
    IntegrationError,
    ParameterDomainError,
    PoleError,
)
