"""Exception types shared by every layer of the engine."""


class EngineError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidBounds(EngineError):
    """Interval bounds are reversed or not finite."""


class NotAContraction(EngineError):
    """A proposed interval is not contained in the one it refines."""


class SchemaError(EngineError):
    """Malformed problem, session, or event document."""


class DimensionError(EngineError):
    """Matrix shape disagrees with the declared alternatives/criteria."""


class UnknownId(EngineError):
    """Reference to an alternative or criterion that was never declared."""


class DuplicateId(EngineError):
    """Alternative or criterion label declared more than once."""


class InconsistentRelation(EngineError):
    """Transitive closure reverses a pair that was asserted strictly."""


class WrongVariant(EngineError):
    """Operation applied to a problem of the wrong structure kind."""


class NotEliminated(EngineError):
    """Explanation requested for an alternative nobody dominated."""


class SamePair(EngineError):
    """A pairwise query needs two distinct alternatives."""


class ContradictoryInformation(EngineError):
    """New comparison would revoke an existing strict preference."""


class StaleSequence(EngineError):
    """Event sequence number does not extend the session log."""


class EmptyLog(EngineError):
    """Undo requested on a session with no events."""


class ReplayError(EngineError):
    """Persisted session log cannot be replayed against its base problem."""


class NestingViolation(EngineError):
    """Internal fault: a recomputed state escaped its predecessor."""
