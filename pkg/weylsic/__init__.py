# flake8: noqa
from weylsic._version import __version__, __version_info__
from weylsic.exactcore import (
    MonomialMatrix,
    PhaseExp,
    canonical_phase,
    extract_monomial,
    monomial_compose,
    monomial_order,
    monomial_to_dense,
)
from weylsic.heisenberg import (
    DisplacementIndex,
    RepBasis,
    SchmidtSpectrum,
    StabilizerSubgroup,
    change_of_basis,
    displacement,
    displacement_table,
    generators,
    identify_displacement,
    is_local,
    kronecker_factor_check,
    local_displacements,
    pp_generators,
    schmidt_spectrum,
    stabilizer_subgroups,
    standard_generators,
    unique_order_n_stabilizer,
)
from weylsic.clifford import (
    CliffordElement,
    SymplecticMatrix,
    clifford_group_closure,
    conjugation_action,
    fix_order3_phase,
    metaplectic_unitary,
    sl2_order,
    symplectic_order3_zauner,
    verify_monomiality,
    zauner_block_diagonalize,
    zauner_spectrum,
    zauner_unitary,
)
from weylsic.sicmoduli import (
    FiducialComponents,
    ModuliVector,
    character_sums,
    derived_identities,
    format_surd,
    independent_equation_set,
    moduli_n4_branches,
    moduli_residuals_pp,
    moduli_residuals_standard,
    phase_residuals,
    solve_moduli_n4,
)
from weylsic.config import SearchConfig
from weylsic.sicsearch import (
    Fiducial,
    Orbit,
    SearchResult,
    frame_potential,
    frame_potential_gradient,
    multiplet_report,
    orbit,
    overlap_profile,
    search_fiducial,
    sic_check,
    zauner_invariant_parametrization,
)
from weylsic.theta import (
    LatticeParams,
    ThetaCharacteristic,
    action_check,
    induced_action,
    jacobi_theta,
    quasi_periodicity_check,
    theta_char,
    theta_series,
)
from weylsic.fiducial_file import FiducialFile
from weylsic.report import Report
from weylsic.weyl_exception import (
    BudgetExceeded,
    ClaimViolated,
    ConfigParseError,
    DimensionError,
    FiducialFileError,
    NoIntertwiner,
    NotConverged,
    NotLocal,
    NotMonomial,
    NotOrderThree,
    NotUnitary,
    OrderOverflow,
    PhaseNotRecognized,
    TailBoundExceeded,
    WeylException,
)
from weylsic.util import get_logger, log_to_file, log_to_stderr

from weylsic.common import (
    PHASE_PERMUTATION,
    STANDARD,
)

__author__ = "The weylsic developers"
__license__ = "GNU Lesser General Public License (LGPL)"

__all__ = [
    "BudgetExceeded",
    "ClaimViolated",
    "CliffordElement",
    "ConfigParseError",
    "DimensionError",
    "DisplacementIndex",
    "Fiducial",
    "FiducialComponents",
    "FiducialFile",
    "FiducialFileError",
    "LatticeParams",
    "ModuliVector",
    "MonomialMatrix",
    "NoIntertwiner",
    "NotConverged",
    "NotLocal",
    "NotMonomial",
    "NotOrderThree",
    "NotUnitary",
    "Orbit",
    "OrderOverflow",
    "PHASE_PERMUTATION",
    "PhaseExp",
    "PhaseNotRecognized",
    "RepBasis",
    "Report",
    "STANDARD",
    "SchmidtSpectrum",
    "SearchConfig",
    "SearchResult",
    "StabilizerSubgroup",
    "SymplecticMatrix",
    "TailBoundExceeded",
    "ThetaCharacteristic",
    "WeylException",
    "action_check",
    "canonical_phase",
    "change_of_basis",
    "character_sums",
    "clifford_group_closure",
    "conjugation_action",
    "derived_identities",
    "displacement",
    "displacement_table",
    "extract_monomial",
    "fix_order3_phase",
    "format_surd",
    "frame_potential",
    "frame_potential_gradient",
    "generators",
    "get_logger",
    "identify_displacement",
    "independent_equation_set",
    "induced_action",
    "is_local",
    "jacobi_theta",
    "kronecker_factor_check",
    "local_displacements",
    "log_to_file",
    "log_to_stderr",
    "metaplectic_unitary",
    "moduli_n4_branches",
    "moduli_residuals_pp",
    "moduli_residuals_standard",
    "monomial_compose",
    "monomial_order",
    "monomial_to_dense",
    "multiplet_report",
    "orbit",
    "overlap_profile",
    "phase_residuals",
    "pp_generators",
    "quasi_periodicity_check",
    "schmidt_spectrum",
    "search_fiducial",
    "sic_check",
    "sl2_order",
    "solve_moduli_n4",
    "stabilizer_subgroups",
    "standard_generators",
    "symplectic_order3_zauner",
    "theta_char",
    "theta_series",
    "unique_order_n_stabilizer",
    "verify_monomiality",
    "zauner_block_diagonalize",
    "zauner_invariant_parametrization",
    "zauner_spectrum",
    "zauner_unitary",
]
