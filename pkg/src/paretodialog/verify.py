"""Re-runnable property suites behind ``verify``.

Each suite generates seeded instances and checks one of the package's
product claims, either against brute force applied straight to raw data
or by driving the refinement harness against hidden ground truth.  The
oracles here live on plain lists and index pairs on purpose: they share
no code with the engine path they certify.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ContradictoryInformation, NestingViolation, NotAContraction
from .generate import (
    random_interval_problem,
    random_point_problem,
    random_relation_problem,
)
from .intervals import DominanceMode, Interval
from .model import IntervalStructure, Problem, RelationStructure, criterion_to_relation
from .pareto import interval_pareto, point_pareto, vpr_pareto
from .session import AddComparison, RefinementEvent, TightenInterval, create_session
from .utility import vpr_to_interval_structure


@dataclass(frozen=True)
class Violation:
    suite: str
    instance: int
    category: str
    message: str

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "category": self.category,
            "message": self.message,
        }


@dataclass
class SuiteReport:
    suite: str
    instances: int
    seed: int
    checks: int = 0
    checks_by_category: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def category_violations(self, *categories: str) -> list[Violation]:
        return [v for v in self.violations if v.category in categories]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "seed": self.seed,
            "checks": self.checks,
            "checks_by_category": dict(sorted(self.checks_by_category.items())),
            "violations": [v.to_json() for v in self.violations],
        }


class _Run:
    """Mutable check/violation tally shared by one suite run."""

    def __init__(self, suite: str):
        self.suite = suite
        self.report = SuiteReport(suite=suite, instances=0, seed=0)

    def check(self, instance: int, condition: bool, message: str, category: str = "general") -> None:
        self.report.checks += 1
        tally = self.report.checks_by_category
        tally[category] = tally.get(category, 0) + 1
        if not condition:
            self.report.violations.append(Violation(self.suite, instance, category, message))


# ---------------------------------------------------------------------------
# Brute-force oracles on raw data


def oracle_point_pareto(matrix: list[list[float]]) -> set[int]:
    n = len(matrix)
    m = len(matrix[0])
    pareto = set()
    for x in range(n):
        dominated = False
        for y in range(n):
            if y == x:
                continue
            ge_all = True
            gt_some = False
            for j in range(m):
                if matrix[y][j] < matrix[x][j]:
                    ge_all = False
                if matrix[y][j] > matrix[x][j]:
                    gt_some = True
            if ge_all and gt_some:
                dominated = True
        if not dominated:
            pareto.add(x)
    return pareto


def oracle_interval_pareto(bounds: list[list[tuple[float, float]]], strict: bool) -> set[int]:
    n = len(bounds)
    m = len(bounds[0])

    def beats(y: int, x: int) -> bool:
        for j in range(m):
            lo_y = bounds[y][j][0]
            hi_x = bounds[x][j][1]
            if strict:
                if not lo_y > hi_x:
                    return False
            else:
                if not lo_y >= hi_x:
                    return False
        return True

    pareto = set()
    for x in range(n):
        dominated = False
        for y in range(n):
            if y != x and beats(y, x) and not beats(x, y):
                dominated = True
        if not dominated:
            pareto.add(x)
    return pareto


def oracle_relation_pareto(pair_sets: list[set[tuple[int, int]]], n: int) -> set[int]:
    def in_all(y: int, x: int) -> bool:
        return all((y, x) in pairs for pairs in pair_sets)

    pareto = set()
    for x in range(n):
        dominated = False
        for y in range(n):
            if y != x and in_all(y, x) and not in_all(x, y):
                dominated = True
        if not dominated:
            pareto.add(x)
    return pareto


# ---------------------------------------------------------------------------
# Suites


def suite_oracle(instances: int, seed: int) -> SuiteReport:
    """Engine Pareto sets equal brute force, per variant (n<=7, m<=3)."""
    run = _Run("oracle")
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(1, 7), rng.randint(1, 3)

        point = random_point_problem(rng, n, m)
        result = point_pareto(point)
        expect = {point.alternatives[i] for i in oracle_point_pareto([list(r) for r in point.structure.matrix])}
        run.check(
            k,
            set(result.pareto_set) == expect,
            f"point pareto mismatch: {sorted(result.pareto_set)} vs {sorted(expect)}",
            "oracle",
        )
        run.check(k, bool(result.pareto_set), "point pareto empty", "nonempty")

        interval, _ = random_interval_problem(rng, n, m)
        bounds = [[(c.lower, c.upper) for c in row] for row in interval.structure.matrix]
        for mode, strict in ((DominanceMode.STRICT, True), (DominanceMode.WEAK, False)):
            problem = Problem(
                interval.alternatives,
                interval.criteria,
                IntervalStructure(interval.structure.matrix, mode),
            )
            result = interval_pareto(problem)
            expect = {problem.alternatives[i] for i in oracle_interval_pareto(bounds, strict)}
            run.check(
                k,
                set(result.pareto_set) == expect,
                f"interval pareto mismatch ({mode.value}): {sorted(result.pareto_set)} vs {sorted(expect)}",
                "oracle",
            )
            run.check(k, bool(result.pareto_set), f"interval pareto empty ({mode.value})", "nonempty")

        relation, _ = random_relation_problem(rng, n, m)
        index = {a: i for i, a in enumerate(relation.alternatives)}
        pair_sets = [
            {(index[x], index[y]) for x, y in rel.pairs} for rel in relation.structure.relations
        ]
        result = vpr_pareto(relation)
        expect = {relation.alternatives[i] for i in oracle_relation_pareto(pair_sets, n)}
        run.check(
            k,
            set(result.pareto_set) == expect,
            f"vpr pareto mismatch: {sorted(result.pareto_set)} vs {sorted(expect)}",
            "oracle",
        )
        run.check(k, bool(result.pareto_set), "vpr pareto empty", "nonempty")

    run.report.instances = instances
    run.report.seed = seed
    return run.report


def suite_eq6(instances: int, seed: int) -> SuiteReport:
    """Criterion columns recast as relations give the same Pareto set (n<=8, m<=4)."""
    run = _Run("eq6")
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(1, 8), rng.randint(1, 4)
        point = random_point_problem(rng, n, m)
        relations = tuple(criterion_to_relation(point, c) for c in point.criteria)
        as_relations = Problem(point.alternatives, point.criteria, RelationStructure(relations))
        from_points = point_pareto(point).pareto_set
        from_relations = vpr_pareto(as_relations).pareto_set
        run.check(
            k,
            from_points == from_relations,
            f"pareto differs: points {sorted(from_points)} vs relations {sorted(from_relations)}",
            "eq6",
        )
        run.check(k, bool(from_points), "point pareto empty", "nonempty")
    run.report.instances = instances
    run.report.seed = seed
    return run.report


def suite_eq14(instances: int, seed: int) -> SuiteReport:
    """Utility brackets are ordered, tight exactly when fully matched."""
    run = _Run("eq14")
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(1, 8), rng.randint(1, 3)
        observed, hidden = random_relation_problem(rng, n, m)
        converted = vpr_to_interval_structure(observed)
        alts = observed.alternatives
        for j, rel in enumerate(observed.structure.relations):
            for i, x in enumerate(alts):
                cell = converted.structure.matrix[i][j]
                low = sum(
                    1 for y in alts if y != x and (x, y) in rel.pairs and (y, x) not in rel.pairs
                )
                unmatched = sum(
                    1
                    for y in alts
                    if y != x and (x, y) not in rel.pairs and (y, x) not in rel.pairs
                )
                run.check(k, cell.upper >= cell.lower, f"bracket reversed at ({x}, col {j})", "eq14")
                run.check(
                    k,
                    cell == Interval(low, low + unmatched),
                    f"bracket {cell} disagrees with recount [{low}, {low + unmatched}]",
                    "eq14",
                )
                run.check(
                    k,
                    (cell.upper == cell.lower) == (unmatched == 0),
                    f"degeneracy at ({x}, col {j}) disagrees with incomparability",
                    "eq14",
                )
        degenerate = vpr_to_interval_structure(hidden)
        run.check(
            k,
            all(cell.is_degenerate for row in degenerate.structure.matrix for cell in row),
            "connected relations should give all-degenerate brackets",
            "eq14",
        )
        nested = vpr_pareto(observed).pareto_set <= interval_pareto(converted).pareto_set
        run.check(k, nested, "relation pareto escapes its interval recast", "eq14")
    run.report.instances = instances
    run.report.seed = seed
    return run.report


def _snapshot_string(session) -> str:
    return json.dumps(session.snapshot(suggestion_limit=0), sort_keys=True)


def suite_nesting(instances: int, seed: int) -> SuiteReport:
    """Hidden-point harness: contraction keeps the chain nested on the truth."""
    run = _Run("nesting")
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(1, 8), rng.randint(1, 3)
        problem, truth = random_interval_problem(rng, n, m)
        baseline = point_pareto(truth).pareto_set
        session = create_session(problem, baseline=baseline, session_id=f"nesting-{seed}-{k}")
        run.check(k, bool(session.pareto_set), "initial pareto empty", "nonempty")
        run.check(
            k,
            baseline <= session.pareto_set,
            "truth pareto escapes the initial interval pareto",
            "nesting",
        )

        points = truth.structure.matrix
        target = rng.randint(5, 20)
        applied = 0
        while applied < target:
            open_cells = [
                (i, j)
                for i in range(n)
                for j in range(m)
                if session.working_matrix[i][j].width > 0
            ]
            if not open_cells:
                break
            i, j = rng.choice(open_cells)
            cur = session.working_matrix[i][j]
            p = points[i][j]
            if rng.random() < 0.2:
                new = Interval(p, p)
            else:
                lo = min(max(rng.uniform(cur.lower, p), cur.lower), p)
                hi = max(min(rng.uniform(p, cur.upper), cur.upper), p)
                new = Interval(lo, hi)
            previous = session.pareto_set
            event = RefinementEvent(
                sequence=session.next_sequence,
                payload=TightenInterval(
                    alt=problem.alternatives[i], criterion=problem.criteria[j], interval=new
                ),
            )
            try:
                delta = session.apply(event)
            except NestingViolation as fault:
                run.check(k, False, f"engine nesting fault: {fault}", "monotone")
                break
            applied += 1
            current = session.pareto_set
            run.check(k, current <= previous, f"pareto grew after event {event.sequence}", "monotone")
            run.check(
                k, baseline <= current, f"truth pareto escaped after event {event.sequence}", "nesting"
            )
            run.check(k, bool(current), f"pareto empty after event {event.sequence}", "nonempty")
            run.check(k, delta.nesting_ok, "delta reported a nesting fault", "monotone")

            if rng.random() < 0.15:
                before = _snapshot_string(session)
                cell = session.working_matrix[i][j]
                escape = RefinementEvent(
                    sequence=session.next_sequence,
                    payload=TightenInterval(
                        alt=problem.alternatives[i],
                        criterion=problem.criteria[j],
                        interval=Interval(cell.lower - 1.0, cell.upper),
                    ),
                )
                try:
                    session.apply(escape)
                    run.check(k, False, "escaping interval was accepted", "monotone")
                except NotAContraction:
                    run.check(
                        k,
                        _snapshot_string(session) == before,
                        "rejected event changed state",
                        "monotone",
                    )

        report = session.pareto_history()
        run.check(k, report.nesting_ok, "final chain is not nested", "nesting")
        run.check(
            k, report.baseline_ok is True, "final chain does not contain the truth pareto", "nesting"
        )
    run.report.instances = instances
    run.report.seed = seed
    return run.report


def suite_refinement(instances: int, seed: int) -> SuiteReport:
    """Hidden-relation harness: revealing true pairs keeps the chain nested."""
    run = _Run("refinement")
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(2, 8), rng.randint(1, 3)
        problem, truth = random_relation_problem(rng, n, m)
        baseline = vpr_pareto(truth).pareto_set
        session = create_session(problem, baseline=baseline, session_id=f"refine-{seed}-{k}")
        run.check(k, bool(session.pareto_set), "initial pareto empty", "nonempty")
        run.check(
            k,
            baseline <= session.pareto_set,
            "truth pareto escapes the initial bracket pareto",
            "nesting",
        )

        alts = problem.alternatives
        criteria = problem.criteria
        hidden = truth.structure.relations
        target = rng.randint(5, 20)
        applied = 0
        while applied < target:
            reveals = []
            for j, obs in enumerate(session.relations):
                hid = hidden[j]
                for x, y in combinations(alts, 2):
                    if obs.has(x, y) or obs.has(y, x):
                        continue
                    if hid.has(x, y) and not hid.has(y, x):
                        reveals.append((j, x, y))
                    elif hid.has(y, x) and not hid.has(x, y):
                        reveals.append((j, y, x))
            if not reveals:
                break
            j, preferred, other = rng.choice(reveals)
            previous = session.pareto_set
            event = RefinementEvent(
                sequence=session.next_sequence,
                payload=AddComparison(criterion=criteria[j], preferred=preferred, other=other),
            )
            try:
                delta = session.apply(event)
            except ContradictoryInformation:
                run.check(k, False, f"true pair ({preferred}, {other}) was rejected", "monotone")
                break
            except NestingViolation as fault:
                run.check(k, False, f"engine nesting fault: {fault}", "monotone")
                break
            applied += 1
            current = session.pareto_set
            run.check(k, current <= previous, f"pareto grew after event {event.sequence}", "monotone")
            run.check(
                k, baseline <= current, f"truth pareto escaped after event {event.sequence}", "nesting"
            )
            run.check(k, bool(current), f"pareto empty after event {event.sequence}", "nonempty")
            run.check(k, delta.nesting_ok, "delta reported a nesting fault", "monotone")

            if rng.random() < 0.15:
                strict = [
                    (j2, x, y)
                    for j2, obs in enumerate(session.relations)
                    for x, y in obs.strict_pairs()
                ]
                if strict:
                    j2, x, y = rng.choice(strict)
                    before = _snapshot_string(session)
                    reversed_event = RefinementEvent(
                        sequence=session.next_sequence,
                        payload=AddComparison(criterion=criteria[j2], preferred=y, other=x),
                    )
                    try:
                        session.apply(reversed_event)
                        run.check(k, False, "contradictory comparison was accepted", "monotone")
                    except ContradictoryInformation:
                        run.check(
                            k,
                            _snapshot_string(session) == before,
                            "rejected event changed state",
                            "monotone",
                        )

        report = session.pareto_history()
        run.check(k, report.nesting_ok, "final chain is not nested", "nesting")
        run.check(
            k, report.baseline_ok is True, "final chain does not contain the truth pareto", "nesting"
        )
    run.report.instances = instances
    run.report.seed = seed
    return run.report


SUITES = {
    "oracle": suite_oracle,
    "eq6": suite_eq6,
    "eq14": suite_eq14,
    "nesting": suite_nesting,
    "refinement": suite_refinement,
}


def run_suite(name: str, instances: int, seed: int) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return suite(instances, seed)
