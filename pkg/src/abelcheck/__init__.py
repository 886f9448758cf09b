"""Stability and degeneration checks for line bundles on nodal curves."""

from .blowups import (
    BlowupDivisor,
    NotSmoothError,
    SubsetCollection,
    chart_order,
    collection_order,
    is_smooth_collection,
    node_assignment,
    normalize_divisor,
    restrict_collection,
    strict_transform_incidence,
)
from .chains import (
    AmbiguousSubchainError,
    ChainCurve,
    ChainTwister,
    NotAdmissibleError,
    induced_polarization,
    is_admissible,
    pushforward_quasistable,
    semistabilize,
)
from .curves import (
    DegreeMismatchError,
    DualGraph,
    Multidegree,
    Polarization,
    StabilityVerdict,
    Subcurve,
    TwistSearchExhaustedError,
    TwistVector,
    admissible_subcurves,
    boundary_count,
    default_search_radius,
    is_quasistable,
    iter_canonical_twists,
    quasistable_over,
    quasistable_twist_search,
    subcurve_degree,
    subcurve_weight,
    twist_action,
)
from .extension import (
    CheckResult,
    ExtensionReport,
    NodeSection,
    PointFailure,
    check_admissibility_condition,
    check_fixed_chart_bound,
    check_stability_condition,
    fiber_multidegree,
    section_count_away,
    sections_from_point,
    twist_level_difference,
    two_component_graph,
    verify_extension,
)
from .fileio import (
    InputError,
    chain_from_dict,
    collection_from_dict,
    curve_from_dict,
    format_fraction,
    load_chain,
    load_collection,
    load_curve,
    load_schedule,
    parse_fraction,
    parse_integer,
    read_json,
    schedule_from_dict,
)
from .special_points import (
    BlowupSchedule,
    BranchCounts,
    DEFAULT_SCHEDULE,
    InvalidOrderError,
    NotConstructibleError,
    OrderIncompleteError,
    SpecialPoint,
    StructureReport,
    check_special_point,
    enumerate_special_points,
    extend_special_point,
    far_branch_counts,
    label_precedes,
    node_order,
    schedule_collection,
    schedule_order,
    twist_level,
)

__all__ = [
    "AmbiguousSubchainError",
    "BlowupDivisor",
    "BlowupSchedule",
    "BranchCounts",
    "ChainCurve",
    "ChainTwister",
    "CheckResult",
    "DEFAULT_SCHEDULE",
    "DegreeMismatchError",
    "DualGraph",
    "ExtensionReport",
    "InputError",
    "InvalidOrderError",
    "Multidegree",
    "NodeSection",
    "NotAdmissibleError",
    "NotConstructibleError",
    "NotSmoothError",
    "OrderIncompleteError",
    "PointFailure",
    "Polarization",
    "SpecialPoint",
    "StabilityVerdict",
    "StructureReport",
    "Subcurve",
    "SubsetCollection",
    "TwistSearchExhaustedError",
    "TwistVector",
    "admissible_subcurves",
    "boundary_count",
    "chain_from_dict",
    "chart_order",
    "check_admissibility_condition",
    "check_fixed_chart_bound",
    "check_special_point",
    "check_stability_condition",
    "collection_from_dict",
    "collection_order",
    "curve_from_dict",
    "default_search_radius",
    "enumerate_special_points",
    "extend_special_point",
    "far_branch_counts",
    "fiber_multidegree",
    "format_fraction",
    "induced_polarization",
    "is_admissible",
    "is_quasistable",
    "is_smooth_collection",
    "iter_canonical_twists",
    "label_precedes",
    "load_chain",
    "load_collection",
    "load_curve",
    "load_schedule",
    "node_assignment",
    "node_order",
    "normalize_divisor",
    "parse_fraction",
    "parse_integer",
    "pushforward_quasistable",
    "quasistable_over",
    "quasistable_twist_search",
    "read_json",
    "restrict_collection",
    "schedule_collection",
    "schedule_from_dict",
    "schedule_order",
    "section_count_away",
    "sections_from_point",
    "semistabilize",
    "subcurve_degree",
    "subcurve_weight",
    "twist_action",
    "twist_level",
    "twist_level_difference",
    "two_component_graph",
    "verify_extension",
]
