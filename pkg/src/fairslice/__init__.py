"""Exact envy-free division of [0, 1] for players who may refuse every piece.

The package works over rationals end to end: cut points, measures, owner and
preference labels, determinants, and the final assignment are all exact.
"""
from .errors import (
    AssumptionViolationError,
    BudgetExceededError,
    FairsliceError,
    InputFormatError,
    InvariantViolationError,
    PreconditionError,
    WitnessNotFoundError,
)
from .geometry import (
    affine_point,
    det_points,
    face_barycenter,
    facet_indices,
    format_rational,
    label_set,
    parse_rational,
    points_barycenter,
    simplex_point,
    support,
    sym_index,
    sym_label_set,
    sym_point,
    sym_sign,
)
from .io import (
    dump_json,
    problem_from_json,
    problem_to_json,
    result_to_json,
    write_repro,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .labeling import (
    NiceLabelingSampler,
    VertexLabeling,
    accepted_cut_indices,
    build_labeling,
    check_label_shape,
    check_nice_labeling,
    preference_label,
)
from .preferences import (
    Density,
    DensitySegment,
    Division,
    PreferenceOracle,
    attraction_accepts,
    division_from_point,
    measure_of,
    rejection_accepts,
    require_full_division,
    sym_diff_distance,
    validate_full_division,
)
from .solver import (
    Assignment,
    DepthRecord,
    Problem,
    SolveResult,
    default_max_depth,
    envy_gap,
    extract_assignment,
    solve,
    verify_envy_free,
)
from .sperner import (
    PointLabeling,
    Witness,
    barycenter_det_sum,
    barycenter_labeling,
    boundary_identity_check,
    check_existence_preconditions,
    det_sum,
    distinct_representatives,
    existence_witness,
    fully_labeled_simplices,
    serialize_instance,
)
from .suites import (
    corrupt_point_labeling,
    det_sum_suite,
    existence_suite,
    projection_suite,
    random_affine_columns,
    random_point_labeling,
    scan_suite,
)
from .triangulation import (
    DEFAULT_BUDGET,
    Chain,
    Triangulation,
    barycentric_subdivide,
    boundary_chain,
    check_budget,
    check_owner,
    is_nice,
    mesh_size,
    owner_labeling,
    positively_oriented_chain,
    sd_pow,
    standard_triangulation,
    supports_comparable,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolationError",
    "BudgetExceededError",
    "FairsliceError",
    "InputFormatError",
    "InvariantViolationError",
    "PreconditionError",
    "WitnessNotFoundError",
    "affine_point",
    "det_points",
    "face_barycenter",
    "facet_indices",
    "format_rational",
    "label_set",
    "parse_rational",
    "points_barycenter",
    "simplex_point",
    "support",
    "sym_index",
    "sym_label_set",
    "sym_point",
    "sym_sign",
    "dump_json",
    "problem_from_json",
    "problem_to_json",
    "result_to_json",
    "write_repro",
    "KERNEL_BACKEND",
    "NiceLabelingSampler",
    "VertexLabeling",
    "accepted_cut_indices",
    "build_labeling",
    "check_label_shape",
    "check_nice_labeling",
    "preference_label",
    "Density",
    "DensitySegment",
    "Division",
    "PreferenceOracle",
    "attraction_accepts",
    "division_from_point",
    "measure_of",
    "rejection_accepts",
    "require_full_division",
    "sym_diff_distance",
    "validate_full_division",
    "Assignment",
    "DepthRecord",
    "Problem",
    "SolveResult",
    "default_max_depth",
    "envy_gap",
    "extract_assignment",
    "solve",
    "verify_envy_free",
    "PointLabeling",
    "Witness",
    "barycenter_det_sum",
    "barycenter_labeling",
    "boundary_identity_check",
    "check_existence_preconditions",
    "det_sum",
    "distinct_representatives",
    "existence_witness",
    "fully_labeled_simplices",
    "serialize_instance",
    "corrupt_point_labeling",
    "det_sum_suite",
    "existence_suite",
    "projection_suite",
    "random_affine_columns",
    "random_point_labeling",
    "scan_suite",
    "DEFAULT_BUDGET",
    "Chain",
    "Triangulation",
    "barycentric_subdivide",
    "boundary_chain",
    "check_budget",
    "check_owner",
    "is_nice",
    "mesh_size",
    "owner_labeling",
    "positively_oriented_chain",
    "sd_pow",
    "standard_triangulation",
    "supports_comparable",
    "__version__",
]
