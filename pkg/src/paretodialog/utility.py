"""Utility bounds for relations that leave some pairs unmatched.

An unconnected relation pins each alternative's worth only to an
interval: the pessimistic completion (everyone unmatched beats you)
gives the lower utility, the optimistic one (you beat everyone
unmatched) the upper.  Utilities are dominance counts on an order
scale, so a connected relation collapses every interval to a point.
"""

from __future__ import annotations

from .errors import SamePair, UnknownId, WrongVariant
from .intervals import DominanceMode, Interval
from .model import IntervalStructure, PreferenceRelation, Problem, RelationStructure
from .pareto import DominationRelation


def _closed(rel: PreferenceRelation) -> PreferenceRelation:
    return rel if rel.closed else rel.closure()


def strict_part(rel: PreferenceRelation) -> DominationRelation:
    """Pairs held in one direction only; indifference drops out."""
    return DominationRelation(rel.strict_pairs())


def incomparable_set(rel: PreferenceRelation, x: str) -> frozenset[str]:
    """Alternatives the relation cannot rank against x either way."""
    return _closed(rel).incomparables(x)


def incomparability_multiset(problem: Problem, x: str) -> dict[str, int]:
    """How many criteria leave each other alternative unmatched with x.

    The per-criterion incomparability sets are merged as a multiset: an
    alternative appearing in r of them gets multiplicity r.  Zero counts
    are omitted.
    """
    if not isinstance(problem.structure, RelationStructure):
        raise WrongVariant("incomparability_multiset needs a relation-structure problem")
    problem.alternative_index(x)
    counts: dict[str, int] = {}
    for rel in problem.structure.relations:
        for y in rel.incomparables(x):
            counts[y] = counts.get(y, 0) + 1
    return counts


def superiority_degree(rel: PreferenceRelation, x: str, y: str) -> int:
    """Sign of the pairwise verdict: +1, -1, or 0.

    Skew-symmetric by construction; indifferent and incomparable pairs
    both score 0.
    """
    if x == y:
        raise SamePair(f"superiority degree needs two distinct alternatives, got {x!r} twice")
    rel = _closed(rel)
    known = set(rel.alternatives)
    for label in (x, y):
        if label not in known:
            raise UnknownId(f"unknown alternative {label!r}")
    forward = rel.has(x, y)
    backward = rel.has(y, x)
    if forward and not backward:
        return 1
    if backward and not forward:
        return -1
    return 0


def lower_utility(rel: PreferenceRelation, x: str) -> int:
    """How many alternatives x strictly beats on asserted information alone."""
    rel = _closed(rel)
    if x not in set(rel.alternatives):
        raise UnknownId(f"unknown alternative {x!r}")
    return sum(
        1 for y in rel.alternatives if y != x and rel.has(x, y) and not rel.has(y, x)
    )


def upper_utility(rel: PreferenceRelation, x: str) -> int:
    """Lower utility plus every unresolved comparison credited to x."""
    rel = _closed(rel)
    return lower_utility(rel, x) + len(rel.incomparables(x))


def utility_interval(rel: PreferenceRelation, x: str) -> Interval:
    """The bracket [lower, upper] that must contain x's true utility."""
    rel = _closed(rel)
    return Interval(lower_utility(rel, x), upper_utility(rel, x))


def vpr_to_interval_structure(problem: Problem) -> Problem:
    """Recast a relation problem as an interval problem via utility brackets.

    Cell (i, j) is [lower, upper] utility of alternative i under
    criterion j's relation; connected relations yield degenerate
    columns.  The result uses strict dominance.
    """
    if not isinstance(problem.structure, RelationStructure):
        raise WrongVariant("vpr_to_interval_structure needs a relation-structure problem")
    matrix = tuple(
        tuple(utility_interval(rel, x) for rel in problem.structure.relations)
        for x in problem.alternatives
    )
    return Problem(
        problem.alternatives,
        problem.criteria,
        IntervalStructure(matrix, DominanceMode.STRICT),
    )
