"""Exact computational pipeline for toric prequantization data.

From a Delzant polytope: lattice reduction data, closed-form spectra of the
twisted-shift quadratic forms, Laurent kernel modules with their shift action,
minimal-degree witnesses, and an exact translated-spectrum oracle for diagonal
torus maps.
"""

from toricspec.lattice import (
    LatticeBasis,
    extends_to_lattice_basis,
    hermite_normal_form,
    integer_kernel,
    is_primitive,
    smith_invariants,
)
from toricspec.laurent import (
    BackendMismatchError,
    InconclusiveError,
    KernelModule,
    LaurentPoly,
    LinearSubspace,
    MonomialModule,
    RestrictedElement,
    ZERO_RING,
    ZeroRing,
    kernel_K,
    kernel_K0,
    kernel_membership,
    membership,
    module_generators,
    novikov_shift,
    restrict,
)
from toricspec.minimal import (
    BoundingData,
    MinimalDegreeWitness,
    NoMinimalElement,
    bounding_modules,
    degree_floor_violations,
    find_minimal_degree_element,
    min_degree_bound,
    nullstellensatz_exponents,
    translated_point_bound,
)
from toricspec.oracle import (
    DiagonalMap,
    SpectrumClass,
    SpectrumReport,
    count_in_period,
    count_report,
    feasible_supports,
)
from toricspec.oracle import spectrum as translated_spectrum
from toricspec.polytope import (
    DelzantPolytope,
    ToricData,
    ToricHypothesisError,
    ValidationReport,
    find_positive_b,
    format_polytope,
    is_cpn,
    monotonicity_check,
    parse_polytope,
    rationality_check,
    toric_data,
    validate,
)
from toricspec.quadforms import (
    DecompositionParams,
    EigenDescriptor,
    GenFormSpectrum,
    eigen_vector,
    front_membership,
    quad_form_matrix,
    shift_matrix,
    t_lambda_value,
)
from toricspec.quadforms import spectrum as quadform_spectrum

__version__ = "0.1.0"
