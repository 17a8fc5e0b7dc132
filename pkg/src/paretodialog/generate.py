"""Seeded random problem instances, with optional hidden ground truth.

Interval instances come with the exact points they were widened from;
relation instances come with the connected total preorder their pairs
were deleted from.  Both truths are ordinary problem files, so the
engine's own Pareto operations turn them into reference sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import SchemaError
from .intervals import DominanceMode, Interval
from .model import (
    IntervalStructure,
    PointStructure,
    PreferenceRelation,
    Problem,
    RelationStructure,
)

VARIANTS = ("point", "interval", "relation")


@dataclass(frozen=True)
class GeneratedInstance:
    problem: Problem
    truth: Problem | None


def alternative_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def criterion_labels(m: int) -> tuple[str, ...]:
    return tuple(f"K{j + 1}" for j in range(m))


def random_point_problem(rng: random.Random, n: int, m: int) -> Problem:
    """Integer scores in 0..9; small range so ties actually happen."""
    matrix = tuple(tuple(float(rng.randint(0, 9)) for _ in range(m)) for _ in range(n))
    return Problem(alternative_labels(n), criterion_labels(m), PointStructure(matrix))


def random_interval_problem(
    rng: random.Random, n: int, m: int, degenerate_chance: float = 0.15
) -> tuple[Problem, Problem]:
    """An interval problem plus the hidden point problem inside it.

    Every hidden point is contained in its interval by construction;
    some cells stay degenerate so exact knowledge is exercised too.
    """
    points = []
    cells = []
    for _ in range(n):
        point_row = []
        cell_row = []
        for _ in range(m):
            p = rng.uniform(0.0, 10.0)
            if rng.random() < degenerate_chance:
                lo, hi = p, p
            else:
                lo = p - rng.uniform(0.0, 3.0)
                hi = p + rng.uniform(0.0, 3.0)
            point_row.append(p)
            cell_row.append(Interval(lo, hi))
        points.append(tuple(point_row))
        cells.append(tuple(cell_row))
    alts, crits = alternative_labels(n), criterion_labels(m)
    problem = Problem(alts, crits, IntervalStructure(tuple(cells), DominanceMode.STRICT))
    truth = Problem(alts, crits, PointStructure(tuple(points)))
    return problem, truth


def _score_pairs(scores: list[int]) -> set[tuple[int, int]]:
    n = len(scores)
    return {(a, b) for a in range(n) for b in range(n) if a != b and scores[a] >= scores[b]}


def _as_masks(pairs: set[tuple[int, int]], n: int) -> list[int]:
    masks = [0] * n
    for a, b in pairs:
        masks[a] |= 1 << b
    return masks


def _masks_transitive(masks: list[int], n: int) -> bool:
    for a in range(n):
        reach = masks[a] | (1 << a)
        successors = masks[a]
        b = 0
        while successors:
            if successors & 1 and masks[b] & ~reach:
                return False
            successors >>= 1
            b += 1
    return True


def _forget_pairs(
    rng: random.Random, pairs: set[tuple[int, int]], n: int, drop_chance: float
) -> set[tuple[int, int]]:
    """Delete whole unordered pairs while keeping the remainder transitive.

    Deletions that would break transitivity are rolled back, so the
    observed relation is always a transitive subrelation of the hidden
    one that never asserts anything the hidden one does not.
    """
    kept = set(pairs)
    masks = _as_masks(kept, n)
    candidates = list(combinations(range(n), 2))
    rng.shuffle(candidates)
    for a, b in candidates:
        if rng.random() >= drop_chance:
            continue
        removed = [(x, y) for x, y in ((a, b), (b, a)) if (x, y) in kept]
        if not removed:
            continue
        for x, y in removed:
            masks[x] &= ~(1 << y)
        if _masks_transitive(masks, n):
            kept.difference_update(removed)
        else:
            for x, y in removed:
                masks[x] |= 1 << y
    return kept


def random_relation_problem(
    rng: random.Random, n: int, m: int, drop_chance: float = 0.5
) -> tuple[Problem, Problem]:
    """An unconnected-but-transitive VPR plus its hidden connected truth."""
    alts, crits = alternative_labels(n), criterion_labels(m)
    observed = []
    hidden = []
    for _ in range(m):
        scores = [rng.randint(0, 4) for _ in range(n)]
        full = _score_pairs(scores)
        kept = _forget_pairs(rng, full, n, drop_chance)
        hidden.append(
            PreferenceRelation(alts, frozenset((alts[a], alts[b]) for a, b in full), closed=True)
        )
        observed.append(
            PreferenceRelation(alts, frozenset((alts[a], alts[b]) for a, b in kept), closed=True)
        )
    problem = Problem(alts, crits, RelationStructure(tuple(observed)))
    truth = Problem(alts, crits, RelationStructure(tuple(hidden)))
    return problem, truth


def generate(variant: str, n: int, m: int, seed: int) -> GeneratedInstance:
    """Deterministic instance for a (variant, size, seed) triple."""
    if variant not in VARIANTS:
        raise SchemaError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if n < 1 or m < 1:
        raise SchemaError("need at least one alternative and one criterion")
    rng = random.Random(seed)
    if variant == "point":
        return GeneratedInstance(random_point_problem(rng, n, m), None)
    if variant == "interval":
        problem, truth = random_interval_problem(rng, n, m)
        return GeneratedInstance(problem, truth)
    problem, truth = random_relation_problem(rng, n, m)
    return GeneratedInstance(problem, truth)
