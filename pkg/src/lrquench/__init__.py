"""Quench dynamics of the transverse-field extended Ising chain with
power-law pair couplings.

The even-parity sector factorizes into independent momentum blocks; ground
states, quench evolution, spin correlators (via Pfaffians of Majorana
contractions), two-site total correlation, Loschmidt rate functions, and the
decay-law analysis are all exact finite-size computations. A dense
even-parity reference for small chains validates every convention.
"""

__version__ = "0.1.0"

from .analysis import (
    FiniteSizeFit,
    FitOptions,
    ScalingVerdict,
    cgc_verdict,
    fgc_verdict,
    finite_size_fit,
    fit_profile,
)
from .blocks import (
    BlockHamiltonian,
    BlockState,
    ManyBodyState,
    block_hamiltonian,
    evolve,
    expectation,
    ground_state,
    magnetization_z,
    total_energy,
)
from .correlators import (
    ContractionTable,
    CorrelatorSet,
    build_pfaffian_matrix,
    contraction_table,
    correlator_set,
    toeplitz_correlator_set,
)
from .loschmidt import (
    BogoliubovPair,
    analytic_cusp_times,
    bogoliubov_pair,
    detect_cusps,
    loschmidt_rate,
    loschmidt_rate_overlap,
)
from .model import (
    ModelParams,
    MomentumGrid,
    QuenchProtocol,
    coupling,
    critical_field_lower,
    critical_field_upper,
    dispersion,
    jk_coupling,
    kac_normalization,
)
from .observables import (
    TwoSiteState,
    assemble_two_site,
    mutual_information,
    tc_profile,
    two_site_spectrum_closed_form,
)
from .oracle import (
    DenseState,
    build_dense_hamiltonian,
    compare_with_dense,
    dense_evolve,
    dense_ground_state,
    dense_loschmidt_rate,
    dense_observables,
)
from .pfaffian import KERNEL_NAME, SkewMatrix, pfaffian, pfaffian_sign_convention_check

__all__ = [
    "__version__",
    "BlockHamiltonian",
    "BlockState",
    "BogoliubovPair",
    "ContractionTable",
    "CorrelatorSet",
    "DenseState",
    "FiniteSizeFit",
    "FitOptions",
    "KERNEL_NAME",
    "ManyBodyState",
    "ModelParams",
    "MomentumGrid",
    "QuenchProtocol",
    "ScalingVerdict",
    "SkewMatrix",
    "TwoSiteState",
    "analytic_cusp_times",
    "assemble_two_site",
    "block_hamiltonian",
    "bogoliubov_pair",
    "build_dense_hamiltonian",
    "build_pfaffian_matrix",
    "cgc_verdict",
    "compare_with_dense",
    "contraction_table",
    "correlator_set",
    "coupling",
    "critical_field_lower",
    "critical_field_upper",
    "dense_evolve",
    "dense_ground_state",
    "dense_loschmidt_rate",
    "dense_observables",
    "detect_cusps",
    "dispersion",
    "evolve",
    "expectation",
    "fgc_verdict",
    "finite_size_fit",
    "fit_profile",
    "ground_state",
    "jk_coupling",
    "kac_normalization",
    "loschmidt_rate",
    "loschmidt_rate_overlap",
    "magnetization_z",
    "mutual_information",
    "pfaffian",
    "pfaffian_sign_convention_check",
    "tc_profile",
    "toeplitz_correlator_set",
    "total_energy",
    "two_site_spectrum_closed_form",
]
