"""Pareto sets under incomplete information, with refinement dialogues."""

from .errors import (
    ContradictoryInformation,
    DimensionError,
    DuplicateId,
    EmptyLog,
    EngineError,
    InconsistentRelation,
    InvalidBounds,
    NestingViolation,
    NotAContraction,
    NotEliminated,
    ReplayError,
    SamePair,
    SchemaError,
    StaleSequence,
    UnknownId,
    WrongVariant,
)
from .intervals import DominanceMode, Interval, contract
from .model import (
    IntervalStructure,
    PointStructure,
    PreferenceRelation,
    Problem,
    RelationStructure,
    criterion_to_relation,
    load_problem,
    parse_problem,
    problem_from_json,
    problem_to_json,
    serialize_problem,
)
from .pareto import (
    DominationRelation,
    ParetoResult,
    Witness,
    check_nesting,
    dominance_explanations,
    interval_pareto,
    point_pareto,
    solve,
    vpr_pareto,
)
from .session import (
    AddComparison,
    CompareSuggestion,
    HistoryReport,
    RefinementEvent,
    Session,
    SessionDelta,
    TightenInterval,
    TightenSuggestion,
    create_session,
    load_session,
    save_session,
)
from .utility import (
    incomparability_multiset,
    incomparable_set,
    lower_utility,
    strict_part,
    superiority_degree,
    upper_utility,
    utility_interval,
    vpr_to_interval_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
