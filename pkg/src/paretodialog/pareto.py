"""Pareto domination and Pareto-set extraction for all three structures.

The same recipe runs everywhere: build the componentwise domination
pairs straight from the definitions, keep only their strict part (so
mutually dominating ties survive), and non-dominated alternatives form
the Pareto set.  Because every source relation is transitive, the
strict part is a strict partial order and the set is never empty.

Deliberately the O(n^2 * m) pairwise scan: problems here are
dialogue-sized and the code stays checkable against brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import NotEliminated, UnknownId, WrongVariant
from .model import (
    IntervalStructure,
    PointStructure,
    Problem,
    RelationStructure,
)


@dataclass(frozen=True)
class DominationRelation:
    """Ordered (dominator, dominated) pairs; irreflexive and asymmetric."""

    pairs: frozenset[tuple[str, str]]

    def dominates(self, dominator: str, dominated: str) -> bool:
        return (dominator, dominated) in self.pairs

    def dominators_of(self, x: str) -> frozenset[str]:
        return frozenset(y for y, z in self.pairs if z == x)


@dataclass(frozen=True)
class Witness:
    """One dominator for an eliminated alternative, with per-criterion margins."""

    by: str
    margins: Mapping[str, float]

    def to_json(self) -> dict:
        return {"by": self.by, "margins": dict(self.margins)}


@dataclass(frozen=True)
class ParetoResult:
    pareto_set: frozenset[str]
    domination: DominationRelation
    witnesses: Mapping[str, Witness]
    order: tuple[str, ...]

    def pareto_list(self) -> list[str]:
        """Pareto members in declaration order."""
        return [a for a in self.order if a in self.pareto_set]

    def to_json(self) -> dict:
        index = {a: i for i, a in enumerate(self.order)}
        dominations = sorted(self.domination.pairs, key=lambda p: (index[p[0]], index[p[1]]))
        return {
            "pareto": self.pareto_list(),
            "dominations": [list(pair) for pair in dominations],
            "witnesses": {
                x: self.witnesses[x].to_json() for x in self.order if x in self.witnesses
            },
        }


def _strict_part(pairs: set[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    return frozenset((y, x) for y, x in pairs if (x, y) not in pairs)


def _assemble(
    problem: Problem,
    raw_pairs: set[tuple[str, str]],
    margins: Callable[[str, str], dict[str, float]],
) -> ParetoResult:
    strict = _strict_part(raw_pairs)
    dominated = {x for _, x in strict}
    pareto = frozenset(a for a in problem.alternatives if a not in dominated)
    witnesses = {}
    for x in problem.alternatives:
        if x in dominated:
            by = next(y for y in problem.alternatives if (y, x) in strict)
            witnesses[x] = Witness(by=by, margins=margins(by, x))
    return ParetoResult(pareto, DominationRelation(strict), witnesses, problem.alternatives)


def point_pareto(problem: Problem) -> ParetoResult:
    """Pareto set of an exact score matrix.

    y dominates x when y scores at least as high everywhere and strictly
    higher somewhere.
    """
    if not isinstance(problem.structure, PointStructure):
        raise WrongVariant("point_pareto needs a point-structure problem")
    matrix = problem.structure.matrix
    alts = problem.alternatives
    row = {a: matrix[i] for i, a in enumerate(alts)}
    raw = {
        (y, x)
        for y in alts
        for x in alts
        if y != x
        and all(ky >= kx for ky, kx in zip(row[y], row[x]))
        and any(ky > kx for ky, kx in zip(row[y], row[x]))
    }

    def margins(y: str, x: str) -> dict[str, float]:
        return {c: row[y][j] - row[x][j] for j, c in enumerate(problem.criteria)}

    return _assemble(problem, raw, margins)


def vpr_pareto(problem: Problem) -> ParetoResult:
    """Pareto set of a vector preference relation.

    Domination is the strict part of the intersection of the
    per-criterion relations.  Margins report the per-criterion verdict:
    1 where the dominator is strictly preferred, 0 where indifferent.
    """
    if not isinstance(problem.structure, RelationStructure):
        raise WrongVariant("vpr_pareto needs a relation-structure problem")
    relations = problem.structure.relations
    intersection = frozenset.intersection(*(rel.pairs for rel in relations))

    def margins(y: str, x: str) -> dict[str, float]:
        return {
            c: 1.0 if (x, y) not in rel.pairs else 0.0
            for c, rel in zip(problem.criteria, relations)
        }

    return _assemble(problem, set(intersection), margins)


def interval_pareto(problem: Problem) -> ParetoResult:
    """Pareto set of an interval matrix under the interval order.

    y dominates x when y's interval clears x's on every criterion in the
    problem's dominance mode.
    """
    if not isinstance(problem.structure, IntervalStructure):
        raise WrongVariant("interval_pareto needs an interval-structure problem")
    matrix = problem.structure.matrix
    mode = problem.structure.mode
    alts = problem.alternatives
    row = {a: matrix[i] for i, a in enumerate(alts)}
    raw = {
        (y, x)
        for y in alts
        for x in alts
        if y != x and all(dy.dominates(dx, mode) for dy, dx in zip(row[y], row[x]))
    }

    def margins(y: str, x: str) -> dict[str, float]:
        return {
            c: row[y][j].lower - row[x][j].upper for j, c in enumerate(problem.criteria)
        }

    return _assemble(problem, raw, margins)


def solve(problem: Problem) -> ParetoResult:
    """Dispatch to the Pareto operation matching the problem's structure."""
    if isinstance(problem.structure, PointStructure):
        return point_pareto(problem)
    if isinstance(problem.structure, RelationStructure):
        return vpr_pareto(problem)
    return interval_pareto(problem)


def check_nesting(chain) -> bool:
    """True when each set in the chain is contained in its successor."""
    sets = [set(entry) for entry in chain]
    return all(a <= b for a, b in zip(sets, sets[1:]))


def dominance_explanations(result: ParetoResult, x: str) -> Witness:
    """Who knocked x out, and by how much per criterion."""
    if x not in result.order:
        raise UnknownId(f"unknown alternative {x!r}")
    if x in result.pareto_set:
        raise NotEliminated(f"{x} is in the Pareto set")
    return result.witnesses[x]
