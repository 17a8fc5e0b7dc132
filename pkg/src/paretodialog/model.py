"""Decision problems: alternatives, criteria, and what is known about them.

A problem couples a roster of alternatives with one of three information
structures: exact per-criterion scores, per-criterion score intervals,
or per-criterion weak preference relations.  Relations are transitively
closed when the problem is built and stay closed for the rest of their
life, so downstream code never has to re-derive implied pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import (
    DimensionError,
    DuplicateId,
    InconsistentRelation,
    SchemaError,
    UnknownId,
    WrongVariant,
)
from .intervals import DominanceMode, Interval


@dataclass(frozen=True)
class PreferenceRelation:
    """Weak preference pairs over a fixed roster of alternatives.

    A pair (x, y) asserts "x is at least as good as y".  Reflexive pairs
    carry no information and are dropped on construction; ``closed``
    records that ``pairs`` equals its own transitive closure (set by
    :meth:`closure`, trusted elsewhere).
    """

    alternatives: tuple[str, ...]
    pairs: frozenset[tuple[str, str]] = frozenset()
    closed: bool = False

    def __post_init__(self):
        alts = tuple(self.alternatives)
        known = set(alts)
        kept = set()
        for pair in self.pairs:
            x, y = pair
            for label in pair:
                if label not in known:
                    raise UnknownId(f"relation references undeclared alternative {label!r}")
            if x != y:
                kept.add((x, y))
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "pairs", frozenset(kept))

    def has(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def closure(self) -> PreferenceRelation:
        """Smallest transitive superset (boolean Floyd-Warshall)."""
        if self.closed:
            return self
        alts = self.alternatives
        index = {a: i for i, a in enumerate(alts)}
        n = len(alts)
        adj = [[False] * n for _ in range(n)]
        for x, y in self.pairs:
            adj[index[x]][index[y]] = True
        for k in range(n):
            row_k = adj[k]
            for i in range(n):
                if adj[i][k]:
                    row_i = adj[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        pairs = frozenset(
            (alts[i], alts[j]) for i in range(n) for j in range(n) if i != j and adj[i][j]
        )
        return PreferenceRelation(alts, pairs, closed=True)

    def with_pair(self, preferred: str, other: str) -> PreferenceRelation:
        """Closure of this (already closed) relation plus one new pair.

        Incremental: the only pairs a single insertion can imply are
        predecessor-of-``preferred`` to successor-of-``other``.
        """
        if not self.closed:
            return PreferenceRelation(
                self.alternatives, self.pairs | {(preferred, other)}
            ).closure()
        if (preferred, other) in self.pairs:
            return self
        before = {u for u in self.alternatives if self.has(u, preferred)} | {preferred}
        after = {v for v in self.alternatives if self.has(other, v)} | {other}
        new_pairs = {(u, v) for u in before for v in after if u != v}
        return PreferenceRelation(self.alternatives, self.pairs | new_pairs, closed=True)

    def is_transitive(self) -> bool:
        return self.pairs == self.closure().pairs

    def is_connected(self, alternatives=None) -> bool:
        """Every unordered pair of distinct alternatives is matched some way."""
        alts = self.alternatives if alternatives is None else tuple(alternatives)
        return all(
            (x, y) in self.pairs or (y, x) in self.pairs
            for i, x in enumerate(alts)
            for y in alts[i + 1 :]
        )

    def strict_pairs(self) -> frozenset[tuple[str, str]]:
        """Pairs present in one direction only: genuine preference."""
        return frozenset((x, y) for x, y in self.pairs if (y, x) not in self.pairs)

    def incomparables(self, x: str) -> frozenset[str]:
        """Alternatives the relation says nothing about relative to x."""
        if x not in set(self.alternatives):
            raise UnknownId(f"unknown alternative {x!r}")
        return frozenset(
            y
            for y in self.alternatives
            if y != x and (x, y) not in self.pairs and (y, x) not in self.pairs
        )


@dataclass(frozen=True)
class PointStructure:
    """Exact score matrix, rows by alternative, columns by criterion."""

    matrix: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class IntervalStructure:
    """Score intervals, rows by alternative, columns by criterion."""

    matrix: tuple[tuple[Interval, ...], ...]
    mode: DominanceMode = DominanceMode.STRICT


@dataclass(frozen=True)
class RelationStructure:
    """One weak preference relation per criterion."""

    relations: tuple[PreferenceRelation, ...]


Structure = PointStructure | IntervalStructure | RelationStructure


def _check_consistent(given: PreferenceRelation, closed: PreferenceRelation, where: str) -> None:
    """Closure must not reverse a pair the input asserted strictly."""
    for x, y in given.pairs:
        if (y, x) not in given.pairs and closed.has(y, x):
            raise InconsistentRelation(
                f"{where}: closure reverses the strict pair ({x}, {y})"
            )


@dataclass(frozen=True)
class Problem:
    """A finite choice set plus one information structure over it."""

    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    structure: Structure

    def __post_init__(self):
        alts = tuple(self.alternatives)
        crits = tuple(self.criteria)
        for role, labels in (("alternative", alts), ("criterion", crits)):
            if not labels:
                raise SchemaError(f"at least one {role} is required")
            seen = set()
            for label in labels:
                if not isinstance(label, str) or not label:
                    raise SchemaError(f"{role} labels must be non-empty strings, got {label!r}")
                if label in seen:
                    raise DuplicateId(f"duplicate {role} label {label!r}")
                seen.add(label)
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "criteria", crits)
        object.__setattr__(self, "structure", self._validated(self.structure))

    def _validated(self, structure: Structure) -> Structure:
        n, m = len(self.alternatives), len(self.criteria)
        if isinstance(structure, PointStructure):
            matrix = _check_shape(structure.matrix, n, m)
            rows = []
            for row in matrix:
                vals = []
                for v in row:
                    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                        raise SchemaError(f"point scores must be finite numbers, got {v!r}")
                    vals.append(float(v))
                rows.append(tuple(vals))
            return PointStructure(tuple(rows))
        if isinstance(structure, IntervalStructure):
            matrix = _check_shape(structure.matrix, n, m)
            for row in matrix:
                for cell in row:
                    if not isinstance(cell, Interval):
                        raise SchemaError(f"interval matrix cells must be intervals, got {cell!r}")
            return IntervalStructure(tuple(tuple(row) for row in matrix), structure.mode)
        if isinstance(structure, RelationStructure):
            relations = tuple(structure.relations)
            if len(relations) != m:
                raise DimensionError(
                    f"expected {m} relations (one per criterion), got {len(relations)}"
                )
            closed = []
            for criterion, rel in zip(self.criteria, relations):
                if rel.alternatives != self.alternatives:
                    raise SchemaError(
                        f"relation for {criterion!r} is defined over a different roster"
                    )
                rel_closed = rel.closure()
                _check_consistent(rel, rel_closed, f"relation for {criterion!r}")
                closed.append(rel_closed)
            return RelationStructure(tuple(closed))
        raise SchemaError(f"unknown structure {structure!r}")

    @property
    def n(self) -> int:
        return len(self.alternatives)

    @property
    def m(self) -> int:
        return len(self.criteria)

    @property
    def kind(self) -> str:
        if isinstance(self.structure, PointStructure):
            return "point"
        if isinstance(self.structure, IntervalStructure):
            return "interval"
        return "relation"

    def alternative_index(self, label: str) -> int:
        try:
            return self.alternatives.index(label)
        except ValueError:
            raise UnknownId(f"unknown alternative {label!r}") from None

    def criterion_index(self, label: str) -> int:
        try:
            return self.criteria.index(label)
        except ValueError:
            raise UnknownId(f"unknown criterion {label!r}") from None


def _check_shape(matrix, n: int, m: int):
    rows = tuple(matrix)
    if len(rows) != n:
        raise DimensionError(f"expected {n} matrix rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        cells = tuple(row)
        if len(cells) != m:
            raise DimensionError(f"row {i} has {len(cells)} entries, expected {m}")
        out.append(cells)
    return tuple(out)


def criterion_to_relation(problem: Problem, criterion: str) -> PreferenceRelation:
    """Turn one score column into the weak relation it induces.

    (x, y) is included whenever x scores at least as high as y, so ties
    become mutual (indifferent) pairs and the result is connected and
    transitively closed by construction.
    """
    if not isinstance(problem.structure, PointStructure):
        raise WrongVariant("criterion_to_relation needs a point-structure problem")
    j = problem.criterion_index(criterion)
    column = [row[j] for row in problem.structure.matrix]
    alts = problem.alternatives
    pairs = frozenset(
        (alts[a], alts[b])
        for a in range(len(alts))
        for b in range(len(alts))
        if a != b and column[a] >= column[b]
    )
    return PreferenceRelation(alts, pairs, closed=True)


# ---------------------------------------------------------------------------
# JSON wire format


def problem_to_json(problem: Problem) -> dict:
    doc = {
        "alternatives": list(problem.alternatives),
        "criteria": list(problem.criteria),
    }
    s = problem.structure
    if isinstance(s, PointStructure):
        doc["structure"] = {"kind": "point", "matrix": [list(row) for row in s.matrix]}
    elif isinstance(s, IntervalStructure):
        doc["structure"] = {
            "kind": "interval",
            "mode": s.mode.value,
            "matrix": [[cell.to_json() for cell in row] for row in s.matrix],
        }
    else:
        doc["structure"] = {
            "kind": "relation",
            "relations": [
                {
                    "criterion": criterion,
                    "pairs": sorted([x, y] for x, y in rel.pairs),
                }
                for criterion, rel in zip(problem.criteria, s.relations)
            ],
        }
    return doc


def problem_from_json(doc) -> Problem:
    if not isinstance(doc, dict):
        raise SchemaError("problem document must be a JSON object")
    alternatives = _string_list(doc, "alternatives")
    criteria = _string_list(doc, "criteria")
    structure = doc.get("structure")
    if not isinstance(structure, dict):
        raise SchemaError("missing or malformed 'structure' object")
    kind = structure.get("kind")
    if kind == "point":
        matrix = _matrix_field(structure)
        return Problem(alternatives, criteria, PointStructure(tuple(tuple(r) for r in matrix)))
    if kind == "interval":
        mode_name = structure.get("mode", "strict")
        try:
            mode = DominanceMode(mode_name)
        except ValueError:
            raise SchemaError(f"mode must be 'strict' or 'weak', got {mode_name!r}") from None
        matrix = _matrix_field(structure)
        cells = tuple(tuple(Interval.from_json(c) for c in row) for row in matrix)
        return Problem(alternatives, criteria, IntervalStructure(cells, mode))
    if kind == "relation":
        entries = structure.get("relations")
        if not isinstance(entries, list):
            raise SchemaError("missing or malformed 'relations' list")
        by_criterion = {}
        for entry in entries:
            if not isinstance(entry, dict) or "criterion" not in entry:
                raise SchemaError(f"malformed relation entry {entry!r}")
            name = entry["criterion"]
            if name not in criteria:
                raise UnknownId(f"relation names undeclared criterion {name!r}")
            if name in by_criterion:
                raise SchemaError(f"criterion {name!r} has more than one relation entry")
            by_criterion[name] = _pairs_field(entry)
        missing = [c for c in criteria if c not in by_criterion]
        if missing:
            raise SchemaError(f"no relation given for criteria {missing}")
        alts = tuple(alternatives)
        relations = tuple(
            PreferenceRelation(alts, frozenset(by_criterion[c])) for c in criteria
        )
        return Problem(alternatives, criteria, RelationStructure(relations))
    raise SchemaError(f"structure kind must be point/interval/relation, got {kind!r}")


def _string_list(doc: dict, key: str) -> tuple[str, ...]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"'{key}' must be a list of strings")
    return tuple(value)


def _matrix_field(structure: dict):
    matrix = structure.get("matrix")
    if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
        raise SchemaError("'matrix' must be a list of rows")
    return matrix


def _pairs_field(entry: dict) -> set[tuple[str, str]]:
    pairs = entry.get("pairs")
    if not isinstance(pairs, list):
        raise SchemaError(f"relation for {entry.get('criterion')!r} has no 'pairs' list")
    out = set()
    for pair in pairs:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(p, str) for p in pair)
        ):
            raise SchemaError(f"relation pair must be a two-string array, got {pair!r}")
        out.add((pair[0], pair[1]))
    return out


def parse_problem(text: bytes | str) -> Problem:
    """Parse and validate a UTF-8 JSON problem file."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"problem file is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"problem file is not valid JSON: {exc}") from exc
    return problem_from_json(doc)


def serialize_problem(problem: Problem) -> str:
    return json.dumps(problem_to_json(problem), indent=2) + "\n"


def load_problem(path) -> Problem:
    with open(path, "rb") as handle:
        return parse_problem(handle.read())
