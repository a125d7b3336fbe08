"""Truncated weighted Bergman shift laboratory.

Finite-dimensional realizations of the multiplication operator f -> z^N f on
weighted Bergman spaces of the unit disk, with exact rational and float64
scalar modes, subspace lattice operations, and a verification suite for the
operator identities behind the wandering-subspace reconstruction of reducing
subspaces.
"""

from .errors import (
    AmbientMismatch,
    BadResidue,
    BergmanLabError,
    DepthOverflow,
    DimensionMismatch,
    InvalidAlpha,
    ModeMismatch,
    NotInvariant,
    NotReducing,
    SingularGram,
)
from .operators import (
    LinearMap,
    adjoint,
    apply,
    compose,
    identity_map,
    operator_norm,
    pinv,
    pinv_adjoint,
    restrict,
    shift,
    shift_adjoint,
    singular_values,
    smallest_singular_value,
    subtract,
    weighted_matrix,
)
from .space import (
    CoefficientVector,
    TruncatedSpace,
    inner,
    monomial,
    norm,
    norm_sq,
    random_vector,
    vector,
)
from .subspaces import (
    CensusReport,
    InvarianceResult,
    ReducingResult,
    Subspace,
    extend,
    from_vectors,
    full_subspace,
    invariant_closure,
    is_invariant,
    is_reducing,
    kernel,
    max_degree,
    project,
    projector,
    projectors_equal,
    random_subspace,
    reducing_census,
    residue_degrees,
    residue_subspace,
    span_union,
    subspace_distance,
    truncate,
    wandering,
    zero_subspace,
)
from .verify import (
    CheckSpec,
    ReportEntry,
    SUITE_VERSION,
    VerificationReport,
    default_grid,
    run_check,
    run_suite,
    smoke_grid,
)
from .weights import (
    ScalarMode,
    WeightParams,
    WeightSequence,
    coerce_alpha,
    iterated_coeff,
    lower_bound,
    shift_coeff,
    weight_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BadResidue",
    "BergmanLabError",
    "CensusReport",
    "CheckSpec",
    "CoefficientVector",
    "DepthOverflow",
    "DimensionMismatch",
    "InvalidAlpha",
    "InvarianceResult",
    "LinearMap",
    "ModeMismatch",
    "NotInvariant",
    "NotReducing",
    "ReducingResult",
    "ReportEntry",
    "SUITE_VERSION",
    "ScalarMode",
    "SingularGram",
    "Subspace",
    "TruncatedSpace",
    "VerificationReport",
    "WeightParams",
    "WeightSequence",
    "adjoint",
    "apply",
    "coerce_alpha",
    "compose",
    "default_grid",
    "extend",
    "from_vectors",
    "full_subspace",
    "identity_map",
    "inner",
    "invariant_closure",
    "is_invariant",
    "is_reducing",
    "iterated_coeff",
    "kernel",
    "lower_bound",
    "max_degree",
    "monomial",
    "norm",
    "norm_sq",
    "operator_norm",
    "pinv",
    "pinv_adjoint",
    "project",
    "projector",
    "projectors_equal",
    "random_subspace",
    "random_vector",
    "reducing_census",
    "residue_degrees",
    "residue_subspace",
    "restrict",
    "run_check",
    "run_suite",
    "shift",
    "shift_adjoint",
    "singular_values",
    "smallest_singular_value",
    "smoke_grid",
    "span_union",
    "subspace_distance",
    "subtract",
    "truncate",
    "vector",
    "wandering",
    "weight_sequence",
    "weighted_matrix",
    "zero_subspace",
]
