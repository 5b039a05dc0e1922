"""Exact and floating-point analysis of positive semidefinite operator pairs:
domination and singularity relations, Lebesgue-type decompositions against a
base operator, cone maps that preserve those relations, and reconstruction of
the semilinear operator behind a map's action on lines."""

from .errors import (
    BackendError,
    DimensionMismatchError,
    GenerationError,
    LineMapError,
    MatrixFileError,
    NotSemilinearError,
    PsdConeError,
    RangeInclusionError,
)
from .generators import (
    derive_seed,
    random_pair_with_relation,
    random_psd,
    random_semilinear,
    rank_one,
)
from .io import (
    dumps_canonical,
    loads_matrix,
    matrix_from_obj,
    matrix_to_obj,
    read_matrix,
    read_spec,
    spec_from_obj,
    spec_to_obj,
    write_matrix,
    write_spec,
)
from .lebesgue import (
    DecompositionCheck,
    LebesgueDecomposition,
    ac_domain,
    decompose,
    verify_decomposition,
)
from .linalg import (
    DEFAULT_TOL,
    EXACT,
    FLAVOR_CONJUGATE,
    FLAVOR_LINEAR,
    FLAVORS,
    FLOAT,
    GaussianRational,
    Matrix,
    PsdOperator,
    SemilinearOperator,
    Subspace,
    column_space,
    douglas_factor,
    pinv,
    psd_check,
    psd_sqrt,
    rank,
    subspace_intersect,
    subspace_preimage,
    subspace_sum,
)
from .preserver import (
    Dim2Report,
    PreservationReport,
    PreserverSpec,
    RangeFormReport,
    WeightFamily,
    apply_map,
    dim2_conditions,
    make_wild_map,
    verify_range_form,
    verify_relation_preservation,
)
from .projective import (
    Line,
    LineMap,
    ProjectivityReport,
    induced_line_map,
    projective_scalar,
    reconstruct_semilinear,
    swap_counterexample_line_map,
    unit_line,
    verify_projectivity,
)
from .relations import (
    RelationReport,
    analyze_pair,
    is_abs_continuous,
    is_singular,
    leq,
    min_domination_constant,
    relation_triple,
    same_range_class,
)
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "BackendError",
    "DEFAULT_TOL",
    "DecompositionCheck",
    "Dim2Report",
    "DimensionMismatchError",
    "EXACT",
    "FLAVOR_CONJUGATE",
    "FLAVOR_LINEAR",
    "FLAVORS",
    "FLOAT",
    "GaussianRational",
    "GenerationError",
    "LebesgueDecomposition",
    "Line",
    "LineMap",
    "LineMapError",
    "Matrix",
    "MatrixFileError",
    "NotSemilinearError",
    "PreservationReport",
    "PreserverSpec",
    "ProjectivityReport",
    "PsdConeError",
    "PsdOperator",
    "RangeFormReport",
    "RangeInclusionError",
    "RelationReport",
    "SemilinearOperator",
    "Subspace",
    "WeightFamily",
    "ac_domain",
    "analyze_pair",
    "apply_map",
    "column_space",
    "decompose",
    "derive_seed",
    "dim2_conditions",
    "douglas_factor",
    "dumps_canonical",
    "induced_line_map",
    "is_abs_continuous",
    "is_singular",
    "leq",
    "loads_matrix",
    "make_wild_map",
    "matrix_from_obj",
    "matrix_to_obj",
    "min_domination_constant",
    "pinv",
    "projective_scalar",
    "psd_check",
    "psd_sqrt",
    "random_pair_with_relation",
    "random_psd",
    "random_semilinear",
    "rank",
    "rank_one",
    "read_matrix",
    "read_spec",
    "reconstruct_semilinear",
    "relation_triple",
    "run_suite",
    "same_range_class",
    "spec_from_obj",
    "spec_to_obj",
    "subspace_intersect",
    "subspace_preimage",
    "subspace_sum",
    "swap_counterexample_line_map",
    "unit_line",
    "verify_decomposition",
    "verify_projectivity",
    "verify_range_form",
    "verify_relation_preservation",
    "write_matrix",
    "write_spec",
    "__version__",
]
