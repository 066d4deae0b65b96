"""Certified verification of the explicit formula for zeta functions of
ordinary abelian varieties over finite fields.

The pipeline: parse a Weil polynomial, build the Frobenius companion model
and its exterior-power factor family P_j, enumerate the zero lattices on the
critical lines Re s = j/2, and check that the alternating zero sum of a test
function's transform matches both its Poisson closed form and the geometric
sum over closed points, within a certified truncation budget.
"""

from .bumps import (
    BumpFunction,
    BumpSum,
    PhiResult,
    TailMajorant,
    combine_bumps,
    phi,
    phi_ladder,
    tail_majorant,
)
from .counting import (
    CountTable,
    FixedPointGroup,
    OrbitTable,
    build_count_table,
    closed_point_count,
    fixed_point_group,
    orbit_table,
    point_count,
    primitive_orbit_count,
)
from .errors import (
    BadLength,
    BadNormalization,
    ComputationError,
    CorrespondenceFailure,
    CrossCheckFailure,
    DimensionTooLarge,
    FunctionalEquationViolation,
    InputError,
    InsufficientCountRange,
    NonIntegralInversion,
    NonOrdinaryInput,
    NotPrimePower,
    QuadratureNonConvergence,
    RiemannHypothesisViolation,
    RootRefinementFailure,
    TruncationBudgetExceeded,
    WeilflowError,
)
from .exterior import (
    PjFamily,
    ZeroLattice,
    build_pj_family,
    functional_equation_check,
    zero_lattice,
    zeros_in_window,
)
from .formula import (
    GeometricCell,
    GeometricResult,
    SpectralResult,
    TraceResult,
    VerificationReport,
    geometric_side,
    spectral_side_closed_form,
    spectral_side_zero_sum,
    trace_j,
    verify,
)
from .weil import (
    FrobeniusModel,
    OrdinarityVerdict,
    WeilDatum,
    check_ordinary,
    companion_matrix,
    compute_roots,
    frobenius_model,
    parse_weil_datum,
    prime_power_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "BumpFunction", "BumpSum", "PhiResult", "TailMajorant",
    "combine_bumps", "phi", "phi_ladder", "tail_majorant",
    "CountTable", "FixedPointGroup", "OrbitTable",
    "build_count_table", "closed_point_count", "fixed_point_group",
    "orbit_table", "point_count", "primitive_orbit_count",
    "WeilflowError", "InputError", "ComputationError",
    "NotPrimePower", "BadLength", "BadNormalization",
    "RiemannHypothesisViolation", "NonOrdinaryInput", "DimensionTooLarge",
    "RootRefinementFailure", "CrossCheckFailure", "FunctionalEquationViolation",
    "NonIntegralInversion", "CorrespondenceFailure", "QuadratureNonConvergence",
    "TruncationBudgetExceeded", "InsufficientCountRange",
    "PjFamily", "ZeroLattice", "build_pj_family",
    "functional_equation_check", "zero_lattice", "zeros_in_window",
    "GeometricCell", "GeometricResult", "SpectralResult", "TraceResult",
    "VerificationReport", "geometric_side", "spectral_side_closed_form",
    "spectral_side_zero_sum", "trace_j", "verify",
    "WeilDatum", "OrdinarityVerdict", "FrobeniusModel",
    "check_ordinary", "companion_matrix", "compute_roots",
    "frobenius_model", "parse_weil_datum", "prime_power_decompose",
    "__version__",
]
