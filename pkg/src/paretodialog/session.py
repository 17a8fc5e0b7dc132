"""Event-sourced refinement dialogues.

A session pins a base problem and folds an append-only log of
refinement events into a working interval matrix plus the chain of
Pareto sets produced along the way.  Accepted events can only contract
intervals, so the chain can only shrink; the engine re-verifies both
facts after every event instead of assuming them.  Rejected events
leave the session untouched.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
import uuid
from dataclasses import dataclass

from .errors import (
    ContradictoryInformation,
    EmptyLog,
    EngineError,
    NestingViolation,
    ReplayError,
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
    problem_from_json,
    problem_to_json,
)
from .pareto import ParetoResult, check_nesting, interval_pareto
from .utility import utility_interval


# ---------------------------------------------------------------------------
# Events


@dataclass(frozen=True)
class TightenInterval:
    """Replace one working interval with a sub-interval of itself."""

    alt: str
    criterion: str
    interval: Interval

    kind = "tighten"


@dataclass(frozen=True)
class AddComparison:
    """Assert that one alternative is weakly preferred on one criterion."""

    criterion: str
    preferred: str
    other: str

    kind = "compare"

    def __post_init__(self):
        if self.preferred == self.other:
            raise SchemaError("comparison needs two distinct alternatives")


@dataclass(frozen=True)
class RefinementEvent:
    sequence: int
    payload: TightenInterval | AddComparison
    ts: float = 0.0

    def __post_init__(self):
        if isinstance(self.sequence, bool) or not isinstance(self.sequence, int) or self.sequence < 1:
            raise SchemaError(f"event sequence must be a positive integer, got {self.sequence!r}")


def event_to_json(event: RefinementEvent) -> dict:
    doc = {"sequence": event.sequence, "kind": event.payload.kind, "ts": event.ts}
    p = event.payload
    if isinstance(p, TightenInterval):
        doc.update({"alt": p.alt, "criterion": p.criterion, "interval": p.interval.to_json()})
    else:
        doc.update({"criterion": p.criterion, "preferred": p.preferred, "other": p.other})
    return doc


def event_from_json(doc) -> RefinementEvent:
    if not isinstance(doc, dict):
        raise SchemaError("event must be a JSON object")
    kind = doc.get("kind")
    if kind == "tighten":
        payload = TightenInterval(
            alt=_string_field(doc, "alt"),
            criterion=_string_field(doc, "criterion"),
            interval=Interval.from_json(doc.get("interval")),
        )
    elif kind == "compare":
        payload = AddComparison(
            criterion=_string_field(doc, "criterion"),
            preferred=_string_field(doc, "preferred"),
            other=_string_field(doc, "other"),
        )
    else:
        raise SchemaError(f"event kind must be 'tighten' or 'compare', got {kind!r}")
    ts = doc.get("ts", 0.0)
    if isinstance(ts, bool) or not isinstance(ts, (int, float)):
        raise SchemaError(f"event ts must be a number, got {ts!r}")
    return RefinementEvent(sequence=doc.get("sequence"), payload=payload, ts=float(ts))


def _string_field(doc: dict, key: str) -> str:
    value = doc.get(key)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"event field {key!r} must be a non-empty string")
    return value


# ---------------------------------------------------------------------------
# Deltas, suggestions, history


@dataclass(frozen=True)
class SessionDelta:
    """What one accepted event changed."""

    new_pareto: tuple[str, ...]
    removed: tuple[str, ...]
    changed_intervals: tuple[tuple[str, str, Interval, Interval], ...]
    nesting_ok: bool

    def to_json(self) -> dict:
        return {
            "new_pareto": list(self.new_pareto),
            "removed": list(self.removed),
            "changed_intervals": [
                {"alt": a, "criterion": c, "old": old.to_json(), "new": new.to_json()}
                for a, c, old, new in self.changed_intervals
            ],
            "nesting_ok": self.nesting_ok,
        }


@dataclass(frozen=True)
class CompareSuggestion:
    """Ask the decision maker to rank an unmatched pair."""

    x: str
    y: str
    criteria: tuple[str, ...]
    multiplicity: int
    score: float

    kind = "compare"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "x": self.x,
            "y": self.y,
            "criteria": list(self.criteria),
            "multiplicity": self.multiplicity,
            "score": self.score,
        }


@dataclass(frozen=True)
class TightenSuggestion:
    """Ask the decision maker to narrow one wide interval."""

    alt: str
    criterion: str
    width: float
    score: float

    kind = "tighten"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alt": self.alt,
            "criterion": self.criterion,
            "width": self.width,
            "score": self.score,
        }


Suggestion = CompareSuggestion | TightenSuggestion


@dataclass(frozen=True)
class HistoryReport:
    """The Pareto chain oldest-first plus its nesting certificate."""

    chain: tuple[tuple[str, ...], ...]
    nesting_ok: bool
    baseline_ok: bool | None

    def to_json(self) -> dict:
        return {
            "chain": [list(entry) for entry in self.chain],
            "nesting_ok": self.nesting_ok,
            "baseline_ok": self.baseline_ok,
        }


# ---------------------------------------------------------------------------
# Session


@dataclass
class _Working:
    """Derived state: current relations (if any), intervals, Pareto result."""

    relations: tuple[PreferenceRelation, ...] | None
    matrix: tuple[tuple[Interval, ...], ...]
    result: ParetoResult


class Session:
    """A serial refinement dialogue over one problem.

    State is always a deterministic fold of ``base`` + ``log``; events
    must arrive with dense increasing sequence numbers.  Use
    :func:`create_session` rather than the constructor.
    """

    def __init__(self, session_id: str, base: Problem, baseline: frozenset[str] | None):
        self.id = session_id
        self.base = base
        self.baseline = baseline
        self.log: list[RefinementEvent] = []
        self._working = self._initial_working()
        self.history: list[frozenset[str]] = [self._working.result.pareto_set]

    # -- derived-state plumbing

    def _initial_working(self) -> _Working:
        structure = self.base.structure
        if isinstance(structure, PointStructure):
            raise WrongVariant("point problems carry no uncertainty to refine")
        if isinstance(structure, IntervalStructure):
            if structure.mode is not DominanceMode.STRICT:
                raise WrongVariant(
                    "sessions require strict dominance; weak mode cannot guarantee a shrinking chain"
                )
            relations = None
            matrix = structure.matrix
        else:
            relations = structure.relations
            matrix = self._utility_matrix(relations)
        return _Working(relations, matrix, self._solve(matrix))

    def _solve(self, matrix) -> ParetoResult:
        working_problem = Problem(
            self.base.alternatives,
            self.base.criteria,
            IntervalStructure(matrix, DominanceMode.STRICT),
        )
        return interval_pareto(working_problem)

    def _utility_matrix(self, relations) -> tuple[tuple[Interval, ...], ...]:
        return tuple(
            tuple(utility_interval(rel, x) for rel in relations)
            for x in self.base.alternatives
        )

    # -- public surface

    @property
    def working_matrix(self) -> tuple[tuple[Interval, ...], ...]:
        return self._working.matrix

    @property
    def relations(self) -> tuple[PreferenceRelation, ...] | None:
        return self._working.relations

    @property
    def result(self) -> ParetoResult:
        return self._working.result

    @property
    def pareto_set(self) -> frozenset[str]:
        return self._working.result.pareto_set

    def apply(self, event: RefinementEvent) -> SessionDelta:
        """Validate, fold in, and report one event.

        All checks run before any state changes, so a raised error
        leaves the session exactly as it was.
        """
        expected = len(self.log) + 1
        if event.sequence != expected:
            raise StaleSequence(f"expected sequence {expected}, got {event.sequence}")
        old = self._working
        new = self._apply_payload(old, event.payload)

        previous = old.result.pareto_set
        current = new.result.pareto_set
        self._verify_contraction(old.matrix, new.matrix)
        if not current <= previous:
            raise NestingViolation(
                f"Pareto set gained members after an accepted event: {sorted(current - previous)}"
            )

        self.log.append(event)
        self._working = new
        self.history.append(current)
        order = self.base.alternatives
        changed = tuple(
            (a, c, old.matrix[i][j], new.matrix[i][j])
            for i, a in enumerate(order)
            for j, c in enumerate(self.base.criteria)
            if old.matrix[i][j] != new.matrix[i][j]
        )
        return SessionDelta(
            new_pareto=tuple(a for a in order if a in current),
            removed=tuple(a for a in order if a in previous - current),
            changed_intervals=changed,
            nesting_ok=True,
        )

    def _apply_payload(self, old: _Working, payload) -> _Working:
        if isinstance(payload, TightenInterval):
            if old.relations is not None:
                raise WrongVariant("relation-based sessions take comparisons, not interval edits")
            i = self.base.alternative_index(payload.alt)
            j = self.base.criterion_index(payload.criterion)
            cell = contract(old.matrix[i][j], payload.interval)
            matrix = tuple(
                tuple(cell if (r, c) == (i, j) else old.matrix[r][c] for c in range(self.base.m))
                for r in range(self.base.n)
            )
            return _Working(None, matrix, self._solve(matrix))

        if old.relations is None:
            raise WrongVariant("interval-based sessions take interval edits, not comparisons")
        j = self.base.criterion_index(payload.criterion)
        self.base.alternative_index(payload.preferred)
        self.base.alternative_index(payload.other)
        rel = old.relations[j]
        merged = rel.with_pair(payload.preferred, payload.other)
        for x, y in rel.pairs:
            if not rel.has(y, x) and merged.has(y, x):
                raise ContradictoryInformation(
                    f"comparison would revoke the strict preference ({x}, {y}) on {payload.criterion}"
                )
        relations = tuple(merged if k == j else r for k, r in enumerate(old.relations))
        matrix = self._utility_matrix(relations)
        return _Working(relations, matrix, self._solve(matrix))

    def _verify_contraction(self, old_matrix, new_matrix) -> None:
        for old_row, new_row in zip(old_matrix, new_matrix):
            for old_cell, new_cell in zip(old_row, new_row):
                if not old_cell.encloses(new_cell):
                    raise NestingViolation(
                        f"working interval widened from {old_cell} to {new_cell}"
                    )

    def suggestions(self, k: int) -> list[Suggestion]:
        """What to ask the decision maker next, most informative first.

        Relation sessions rank unmatched pairs of current Pareto members
        by how many criteria leave them unmatched; interval sessions
        rank Pareto members' cells by width.  Resolved information never
        comes back as a suggestion.
        """
        if k <= 0:
            return []
        order = self.base.alternatives
        index = {a: i for i, a in enumerate(order)}
        members = [a for a in order if a in self.pareto_set]
        out: list[Suggestion] = []
        if self._working.relations is not None:
            for ia, x in enumerate(members):
                for y in members[ia + 1 :]:
                    criteria = tuple(
                        c
                        for c, rel in zip(self.base.criteria, self._working.relations)
                        if y in rel.incomparables(x)
                    )
                    if criteria:
                        out.append(
                            CompareSuggestion(
                                x=x,
                                y=y,
                                criteria=criteria,
                                multiplicity=len(criteria),
                                score=float(len(criteria)),
                            )
                        )
            out.sort(key=lambda s: (-s.multiplicity, index[s.x], index[s.y]))
        else:
            for a in members:
                i = index[a]
                for j, c in enumerate(self.base.criteria):
                    width = self._working.matrix[i][j].width
                    if width > 0:
                        out.append(TightenSuggestion(alt=a, criterion=c, width=width, score=width))
            out.sort(key=lambda s: (-s.width, index[s.alt], self.base.criteria.index(s.criterion)))
        return out[:k]

    def pareto_history(self) -> HistoryReport:
        """The chain so far, with the newest-into-oldest nesting re-checked."""
        order = self.base.alternatives
        chain = tuple(tuple(a for a in order if a in entry) for entry in self.history)
        nested = check_nesting(list(reversed(self.history)))
        baseline_ok = None
        if self.baseline is not None:
            baseline_ok = self.baseline <= self.history[-1]
        return HistoryReport(chain=chain, nesting_ok=nested, baseline_ok=baseline_ok)

    def undo(self) -> "Session":
        """Drop the last event and replay the remainder."""
        if not self.log:
            raise EmptyLog("no events to undo")
        events = self.log[:-1]
        fresh = _replay(self.id, self.base, self.baseline, events)
        self.log = fresh.log
        self._working = fresh._working
        self.history = fresh.history
        return self

    @property
    def next_sequence(self) -> int:
        return len(self.log) + 1

    def snapshot(self, suggestion_limit: int = 5) -> dict:
        """Full JSON view of the session for clients."""
        base_structure = self.base.structure
        initial = (
            base_structure.matrix
            if isinstance(base_structure, IntervalStructure)
            else self._utility_matrix(base_structure.relations)
        )
        doc = {
            "id": self.id,
            "kind": "relation" if self._working.relations is not None else "interval",
            "alternatives": list(self.base.alternatives),
            "criteria": list(self.base.criteria),
            "initial": [[cell.to_json() for cell in row] for row in initial],
            "working": [[cell.to_json() for cell in row] for row in self._working.matrix],
            "result": self._working.result.to_json(),
            "history": self.pareto_history().to_json(),
            "suggestions": [s.to_json() for s in self.suggestions(suggestion_limit)],
            "next_sequence": self.next_sequence,
            "baseline": sorted(self.baseline) if self.baseline is not None else None,
        }
        if self._working.relations is not None:
            doc["relations"] = [
                {"criterion": c, "pairs": sorted([x, y] for x, y in rel.pairs)}
                for c, rel in zip(self.base.criteria, self._working.relations)
            ]
        return doc


def create_session(
    problem: Problem,
    baseline=None,
    session_id: str | None = None,
) -> Session:
    """Open a dialogue over an interval or relation problem.

    ``baseline`` is an optional reference Pareto set from complete
    information, used only to certify the nesting chain in test and
    demo runs.
    """
    if baseline is not None:
        known = set(problem.alternatives)
        for label in baseline:
            if label not in known:
                raise UnknownId(f"baseline references unknown alternative {label!r}")
        baseline = frozenset(baseline)
    return Session(session_id or uuid.uuid4().hex[:12], problem, baseline)


def _replay(session_id, base, baseline, events) -> Session:
    fresh = Session(session_id, base, baseline)
    for event in events:
        fresh.apply(event)
    return fresh


# ---------------------------------------------------------------------------
# Persistence


def session_to_json(session: Session) -> dict:
    doc = {
        "id": session.id,
        "base": problem_to_json(session.base),
        "log": [event_to_json(e) for e in session.log],
    }
    if session.baseline is not None:
        doc["baseline"] = sorted(session.baseline)
    return doc


def session_from_json(doc) -> Session:
    if not isinstance(doc, dict):
        raise SchemaError("session document must be a JSON object")
    session_id = doc.get("id")
    if not isinstance(session_id, str) or not session_id:
        raise SchemaError("session 'id' must be a non-empty string")
    base = problem_from_json(doc.get("base"))
    baseline = doc.get("baseline")
    if baseline is not None and (
        not isinstance(baseline, list) or not all(isinstance(b, str) for b in baseline)
    ):
        raise SchemaError("session 'baseline' must be a list of alternative labels")
    log_docs = doc.get("log", [])
    if not isinstance(log_docs, list):
        raise SchemaError("session 'log' must be a list of events")
    events = [event_from_json(e) for e in log_docs]
    try:
        if baseline is not None:
            known = set(base.alternatives)
            for label in baseline:
                if label not in known:
                    raise UnknownId(f"baseline references unknown alternative {label!r}")
        return _replay(session_id, base, frozenset(baseline) if baseline is not None else None, events)
    except EngineError as exc:
        raise ReplayError(f"session log does not replay cleanly: {exc}") from exc


def save_session(session: Session, path) -> None:
    """Write the session file atomically (temp file + rename)."""
    payload = json.dumps(session_to_json(session), indent=2) + "\n"
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".session-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_session(path) -> Session:
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"session file is not valid JSON: {exc}") from exc
    return session_from_json(doc)


def new_event(session: Session, payload, ts: float | None = None) -> RefinementEvent:
    """Convenience: wrap a payload with the session's next sequence number."""
    return RefinementEvent(
        sequence=session.next_sequence,
        payload=payload,
        ts=time.time() if ts is None else ts,
    )
