import json

import pytest
from hypothesis import given, strategies as st

from paretodialog.errors import (
    DimensionError,
    DuplicateId,
    InconsistentRelation,
    InvalidBounds,
    SchemaError,
    UnknownId,
    WrongVariant,
)
from paretodialog.intervals import DominanceMode, Interval
from paretodialog.model import (
    IntervalStructure,
    PointStructure,
    PreferenceRelation,
    Problem,
    RelationStructure,
    criterion_to_relation,
    parse_problem,
    problem_from_json,
    serialize_problem,
)

ALTS = ("x1", "x2", "x3")


def rel(pairs, alts=ALTS, closed=False):
    return PreferenceRelation(alts, frozenset(pairs), closed=closed)


def point_doc(matrix, alts=None, crits=None):
    n = len(matrix)
    m = len(matrix[0]) if matrix else 0
    return {
        "alternatives": alts if alts is not None else [f"x{i+1}" for i in range(n)],
        "criteria": crits if crits is not None else [f"K{j+1}" for j in range(m)],
        "structure": {"kind": "point", "matrix": matrix},
    }


class TestParse:
    def test_minimal_point_problem(self):
        p = parse_problem(json.dumps(point_doc([[1], [2]])).encode())
        assert (p.n, p.m) == (2, 1)
        assert p.structure.matrix == ((1.0,), (2.0,))

    def test_reversed_interval_entry(self):
        doc = {
            "alternatives": ["x1"],
            "criteria": ["K1"],
            "structure": {"kind": "interval", "mode": "strict", "matrix": [[[3, 1]]]},
        }
        with pytest.raises(InvalidBounds):
            problem_from_json(doc)

    def test_relation_with_undeclared_alternative(self):
        doc = {
            "alternatives": ["x1", "x2"],
            "criteria": ["K1"],
            "structure": {
                "kind": "relation",
                "relations": [{"criterion": "K1", "pairs": [["x1", "x9"]]}],
            },
        }
        with pytest.raises(UnknownId):
            problem_from_json(doc)

    def test_ragged_matrix(self):
        with pytest.raises(DimensionError):
            problem_from_json(point_doc([[1, 2], [3]]))

    def test_wrong_row_count(self):
        with pytest.raises(DimensionError):
            problem_from_json(point_doc([[1], [2], [3]], alts=["x1", "x2"]))

    def test_duplicate_labels(self):
        with pytest.raises(DuplicateId):
            problem_from_json(point_doc([[1], [2]], alts=["x1", "x1"]))
        with pytest.raises(DuplicateId):
            problem_from_json(point_doc([[1, 2]], crits=["K1", "K1"], alts=["x1"]))

    def test_not_json(self):
        with pytest.raises(SchemaError):
            parse_problem(b"{nope")

    def test_empty_rosters_rejected(self):
        with pytest.raises(SchemaError):
            problem_from_json(point_doc([], alts=[], crits=["K1"]))

    def test_non_finite_scores_rejected(self):
        doc = point_doc([[1]])
        doc["structure"]["matrix"] = [["oops"]]
        with pytest.raises(SchemaError):
            problem_from_json(doc)

    def test_unknown_structure_kind(self):
        doc = point_doc([[1]])
        doc["structure"]["kind"] = "fuzzy"
        with pytest.raises(SchemaError):
            problem_from_json(doc)

    def test_unknown_criterion_in_relation(self):
        doc = {
            "alternatives": ["x1", "x2"],
            "criteria": ["K1"],
            "structure": {
                "kind": "relation",
                "relations": [{"criterion": "K9", "pairs": []}],
            },
        }
        with pytest.raises(UnknownId):
            problem_from_json(doc)

    def test_missing_relation_entry(self):
        doc = {
            "alternatives": ["x1"],
            "criteria": ["K1", "K2"],
            "structure": {
                "kind": "relation",
                "relations": [{"criterion": "K1", "pairs": []}],
            },
        }
        with pytest.raises(SchemaError):
            problem_from_json(doc)

    def test_inconsistent_relation_rejected(self):
        # weak cycle: closure makes every pair indifferent, reversing each
        # strict claim
        doc = {
            "alternatives": ["x1", "x2", "x3"],
            "criteria": ["K1"],
            "structure": {
                "kind": "relation",
                "relations": [
                    {"criterion": "K1", "pairs": [["x1", "x2"], ["x2", "x3"], ["x3", "x1"]]}
                ],
            },
        }
        with pytest.raises(InconsistentRelation):
            problem_from_json(doc)

    def test_relations_closed_on_load(self):
        doc = {
            "alternatives": ["x1", "x2", "x3"],
            "criteria": ["K1"],
            "structure": {
                "kind": "relation",
                "relations": [{"criterion": "K1", "pairs": [["x1", "x2"], ["x2", "x3"]]}],
            },
        }
        p = problem_from_json(doc)
        loaded = p.structure.relations[0]
        assert loaded.closed
        assert loaded.has("x1", "x3")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "problem",
        [
            Problem(("x1", "x2"), ("K1",), PointStructure(((1.0,), (2.0,)))),
            Problem(
                ("x1", "x2"),
                ("K1", "K2"),
                IntervalStructure(
                    (
                        (Interval(0, 1), Interval(2, 2)),
                        (Interval(-1, 4), Interval(0, 0.5)),
                    ),
                    DominanceMode.WEAK,
                ),
            ),
            Problem(
                ALTS,
                ("K1",),
                RelationStructure((rel({("x1", "x2"), ("x2", "x3")}),)),
            ),
        ],
    )
    def test_parse_serialize_identity(self, problem):
        assert parse_problem(serialize_problem(problem)) == problem

    @given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 100))
    def test_random_round_trip(self, n, m, seed):
        import random

        from paretodialog.generate import generate

        variant = ["point", "interval", "relation"][random.Random(seed).randint(0, 2)]
        problem = generate(variant, n, m, seed).problem
        assert parse_problem(serialize_problem(problem)) == problem


class TestPreferenceRelation:
    def test_reflexive_pairs_dropped(self):
        r = rel({("x1", "x1"), ("x1", "x2")})
        assert r.pairs == frozenset({("x1", "x2")})

    def test_closure_adds_implied_pair(self):
        closed = rel({("x1", "x2"), ("x2", "x3")}).closure()
        assert closed.pairs == frozenset({("x1", "x2"), ("x2", "x3"), ("x1", "x3")})
        assert closed.closed

    def test_closure_idempotent(self):
        once = rel({("x1", "x2"), ("x2", "x3")}).closure()
        assert once.closure().pairs == once.pairs

    def test_closure_of_empty(self):
        assert rel(set()).closure().pairs == frozenset()

    @given(st.sets(st.tuples(st.sampled_from(ALTS), st.sampled_from(ALTS)), max_size=9))
    def test_closure_monotone_and_idempotent(self, pairs):
        r = rel(pairs)
        closed = r.closure()
        assert r.pairs <= closed.pairs
        assert closed.closure().pairs == closed.pairs
        assert closed.is_transitive()

    def test_is_transitive(self):
        assert rel({("x1", "x2"), ("x2", "x3"), ("x1", "x3")}).is_transitive()
        assert not rel({("x1", "x2"), ("x2", "x3")}).is_transitive()
        assert rel(set()).is_transitive()

    def test_is_connected(self):
        chain = rel({("x1", "x2"), ("x2", "x3"), ("x1", "x3")})
        assert chain.is_connected()
        assert not rel({("x1", "x2")}).is_connected()
        assert PreferenceRelation(("x1",), frozenset()).is_connected()

    def test_with_pair_matches_full_closure(self):
        base = rel({("x1", "x2")}).closure()
        incremental = base.with_pair("x2", "x3")
        direct = rel({("x1", "x2"), ("x2", "x3")}).closure()
        assert incremental.pairs == direct.pairs

    @given(
        st.sets(st.tuples(st.sampled_from(ALTS), st.sampled_from(ALTS)), max_size=9),
        st.sampled_from(ALTS),
        st.sampled_from(ALTS),
    )
    def test_with_pair_equals_closure_of_union(self, pairs, a, b):
        if a == b:
            return
        base = rel(pairs).closure()
        assert base.with_pair(a, b).pairs == rel(set(pairs) | {(a, b)}).closure().pairs

    def test_unknown_reference_rejected(self):
        with pytest.raises(UnknownId):
            rel({("x1", "zz")})


class TestCriterionToRelation:
    def test_distinct_column(self):
        p = Problem(ALTS, ("K1",), PointStructure(((3.0,), (1.0,), (2.0,))))
        r = criterion_to_relation(p, "K1")
        assert r.pairs == frozenset({("x1", "x2"), ("x1", "x3"), ("x3", "x2")})
        assert r.closed and r.is_connected() and r.is_transitive()

    def test_ties_give_mutual_preference(self):
        p = Problem(("x1", "x2"), ("K1",), PointStructure(((2.0,), (2.0,))))
        r = criterion_to_relation(p, "K1")
        assert r.pairs == frozenset({("x1", "x2"), ("x2", "x1")})

    def test_single_alternative(self):
        p = Problem(("x1",), ("K1",), PointStructure(((1.0,),)))
        assert criterion_to_relation(p, "K1").pairs == frozenset()

    def test_wrong_variant(self):
        p = Problem(
            ("x1",), ("K1",), IntervalStructure(((Interval(0, 1),),))
        )
        with pytest.raises(WrongVariant):
            criterion_to_relation(p, "K1")

    def test_unknown_criterion(self):
        p = Problem(("x1",), ("K1",), PointStructure(((1.0,),)))
        with pytest.raises(UnknownId):
            criterion_to_relation(p, "K9")
