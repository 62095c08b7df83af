"""Exact-arithmetic stratification calculator for rank-2 and rank-3
Higgs bundle moduli: Harder-Narasimhan strata, downward-flow fixed
points, the limit classification connecting them, and an independent
gauge-scaling verification engine."""

from .admissibility import (
    AdmissibilityError,
    AdmissibleStratum,
    CaseFamily,
    InvariantRange,
    Rank2BoundViolated,
    Rank3BoundViolated,
    RankUnsupported,
    case_family,
    enumerate_strata,
    invariant_range,
    validate,
)
from .core import (
    CaseTag,
    Genus,
    HNPolygon,
    HNType,
    HodgeSummand,
    LimitOutcome,
    Min,
    PolystableSum,
    Rank2,
    Rational,
    StrataError,
    Type12,
    Type21,
    Type111,
    dominates,
    format_hn_type,
    format_label,
    format_rational,
    parse_hn_type,
    parse_label,
    parse_rational,
    polygon_of,
    slope,
)
from .fixed_points import (
    LInvariants,
    MInvariants,
    NoIntegerSolution,
    enumerate_fixed_111,
    enumerate_fixed_components,
    enumerate_m_invariants,
    l_to_m,
    m_to_l,
    validate_fixed_111,
)
from .incidence import (
    IncidenceRow,
    IncidenceTable,
    build_table,
    check_hn_bb_theorem,
    check_rank2_coincidence,
    table_to_csv,
    table_to_dot,
    table_to_records,
)
from .limit_classifier import (
    Aligned,
    AlignmentImpossible,
    CaseFamilyMismatch,
    ClassificationError,
    ClassifierInput,
    InfeasibleBySpecialization,
    NotApplicable,
    SlopeI,
    SlopeN,
    SlopeOutOfBounds,
    case1_threshold,
    classify,
    classify_rank2,
    classify_rank3,
    classify_semistable,
    excluded_gap_integers,
    feasible_inputs,
    stability_audit,
)
from .matrix_oracle import (
    BlockPattern,
    LimitPattern,
    format_block_pattern,
    nonzero_set,
    oracle_check,
    parse_block_pattern,
    scale_exponents,
    take_limit,
)

__version__ = "0.1.0"
