"""Decision making under partial ignorance: interval-valued expected
utilities over per-act probability boxes, dominance ordering, and
best-first exploration of error-indexed credal levels."""

from .belief import (
    MassFunction,
    TotalConflictError,
    bel,
    bel_pl_interval,
    dempster_combine,
    discount,
    discount_threshold,
    pl,
)
from .confidence import SampleCount, binomial_cdf, binomial_sf, clopper_pearson
from .engine import (
    DECIDED,
    NO_MANDATE,
    RISK_PROBLEM,
    DecisionReport,
    InfeasibleLevelError,
    ParameterizedCredal,
    ToleranceSpec,
    TraceRow,
    WeightedCredal,
    explore,
    higher_order_eu,
    starr,
    tolerable_error,
)
from .expectation import (
    Act,
    DecisionProblem,
    FeasibilityError,
    Outcome,
    eu_all,
    eu_interval,
)
from .intervals import (
    CERTAIN,
    IMPOSSIBLE,
    VACUOUS,
    Interval,
    ProbInterval,
    dominates,
    frechet_and,
    intersect,
    scale_add,
)
from .knowledge import (
    BodyOfKnowledge,
    ConflictingConstraintError,
    CredalLevel,
    CredalSequence,
    InconsistentBodyError,
    NoUniqueReferenceClassError,
    ReferenceClassTable,
    Statement,
    accept_next_most_probable,
    accept_threshold,
    apply_level,
    direct_inference,
    is_nested,
    level_from_body,
    sequence_from_bodies,
)
from .ordering import (
    MaximalSet,
    hurwicz,
    leximin,
    maximal_set,
    maximin,
    midpoint_rank,
    min_regret,
    worst_case_regrets,
)
from .problem_io import (
    LevelSpec,
    ProblemDocument,
    ProblemFormatError,
    document_to_dict,
    dumps,
    load_path,
    loads,
    parse_document,
    sequence_bytes,
    sequence_to_dict,
)
from .replicate import ReplicationResult, load_fixture, replicate

__version__ = "0.1.0"

__all__ = [
    "Act",
    "BodyOfKnowledge",
    "CERTAIN",
    "ConflictingConstraintError",
    "CredalLevel",
    "CredalSequence",
    "DECIDED",
    "DecisionProblem",
    "DecisionReport",
    "FeasibilityError",
    "IMPOSSIBLE",
    "InconsistentBodyError",
    "InfeasibleLevelError",
    "Interval",
    "LevelSpec",
    "MassFunction",
    "MaximalSet",
    "NO_MANDATE",
    "NoUniqueReferenceClassError",
    "Outcome",
    "ParameterizedCredal",
    "ProbInterval",
    "ProblemDocument",
    "ProblemFormatError",
    "RISK_PROBLEM",
    "ReferenceClassTable",
    "ReplicationResult",
    "SampleCount",
    "Statement",
    "ToleranceSpec",
    "TotalConflictError",
    "TraceRow",
    "VACUOUS",
    "WeightedCredal",
    "accept_next_most_probable",
    "accept_threshold",
    "apply_level",
    "bel",
    "bel_pl_interval",
    "binomial_cdf",
    "binomial_sf",
    "clopper_pearson",
    "dempster_combine",
    "direct_inference",
    "discount",
    "discount_threshold",
    "document_to_dict",
    "dominates",
    "dumps",
    "eu_all",
    "eu_interval",
    "explore",
    "frechet_and",
    "higher_order_eu",
    "hurwicz",
    "intersect",
    "is_nested",
    "leximin",
    "level_from_body",
    "load_fixture",
    "load_path",
    "loads",
    "maximal_set",
    "maximin",
    "midpoint_rank",
    "min_regret",
    "parse_document",
    "pl",
    "replicate",
    "scale_add",
    "sequence_bytes",
    "sequence_from_bodies",
    "sequence_to_dict",
    "starr",
    "tolerable_error",
    "worst_case_regrets",
]
