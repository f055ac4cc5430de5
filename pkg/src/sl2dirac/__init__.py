"""Localised spectra of the Dirac operator on the universal cover of SL(2, R)."""

from .bundles_flow import (
    BundleId,
    SpectralFlowReport,
    bundle_vector,
    discriminant,
    epsilon,
    lambda_pm,
    m_of_q,
    omega,
    spectral_flow,
)
from .cohomology import CohomologyResult, dirac_cohomology, on_arc
from .operators import (
    TruncationWindow,
    build_D_hat,
    build_H_block,
    clifford_generators,
    invariant_block,
    ladder_coefficient,
)
from .param_space import (
    LIMIT_OF_DISCRETE_SERIES,
    DiscPoint,
    Discrete,
    Principal,
    helix_coordinates,
    homotopy_h,
    plancherel_density,
    to_compact_model,
)
from .spectral import LocalSpectrum, SpectrumEntry, closed_form_spectrum, compare_spectra, oracle_spectrum

__version__ = "0.1.0"
