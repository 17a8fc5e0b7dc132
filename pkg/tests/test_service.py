import pytest
from fastapi.testclient import TestClient

from paretodialog.service import create_app

INTERVAL_PROBLEM = {
    "alternatives": ["x1", "x2", "x3"],
    "criteria": ["K1", "K2"],
    "structure": {
        "kind": "interval",
        "mode": "strict",
        "matrix": [
            [[4, 6], [4, 6]],
            [[1, 2], [1, 2]],
            [[0, 3], [7, 9]],
        ],
    },
}

RELATION_PROBLEM = {
    "alternatives": ["x1", "x2", "x3"],
    "criteria": ["K1"],
    "structure": {
        "kind": "relation",
        "relations": [{"criterion": "K1", "pairs": [["x1", "x2"]]}],
    },
}

POINT_PROBLEM = {
    "alternatives": ["x1", "x2"],
    "criteria": ["K1"],
    "structure": {"kind": "point", "matrix": [[1], [2]]},
}


@pytest.fixture
def state_dir(tmp_path):
    return tmp_path / "state"


@pytest.fixture
def client(state_dir):
    return TestClient(create_app(state_dir))


def create(client, problem=INTERVAL_PROBLEM, baseline=None):
    body = {"problem": problem}
    if baseline is not None:
        body["baseline"] = baseline
    response = client.post("/api/v1/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def tighten_event(seq, alt, criterion, lo, hi):
    return {"sequence": seq, "kind": "tighten", "alt": alt,
            "criterion": criterion, "interval": [lo, hi]}


class TestHealth:
    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestCreateSession:
    def test_interval_problem(self, client):
        created = create(client)
        assert created["pareto"] == ["x1", "x3"]
        assert created["session_id"]
        assert created["suggestions"]

    def test_malformed_body_is_400(self, client):
        response = client.post("/api/v1/sessions", content=b"{nope")
        assert response.status_code == 400
        assert response.json()["code"] == "SCHEMA"

    def test_missing_problem_key_is_400(self, client):
        response = client.post("/api/v1/sessions", json={"nope": 1})
        assert response.status_code == 400

    def test_point_structure_is_422(self, client):
        response = client.post("/api/v1/sessions", json={"problem": POINT_PROBLEM})
        assert response.status_code == 422
        assert response.json()["code"] == "WRONG_VARIANT"

    def test_bad_baseline_is_422(self, client):
        response = client.post(
            "/api/v1/sessions", json={"problem": INTERVAL_PROBLEM, "baseline": ["zz"]}
        )
        assert response.status_code == 422
        assert response.json()["code"] == "UNKNOWN_ID"


class TestEvents:
    def test_valid_tighten(self, client):
        sid = create(client)["session_id"]
        response = client.post(
            f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "x3", "K2", 8, 9)
        )
        assert response.status_code == 200
        delta = response.json()
        assert set(delta["new_pareto"]) <= {"x1", "x3"}
        assert delta["nesting_ok"] is True

    def test_widen_is_422(self, client):
        sid = create(client)["session_id"]
        response = client.post(
            f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "x3", "K2", 6, 9)
        )
        assert response.status_code == 422
        assert response.json()["code"] == "NOT_A_CONTRACTION"

    def test_replayed_sequence_is_409(self, client):
        sid = create(client)["session_id"]
        event = tighten_event(1, "x3", "K2", 8, 9)
        assert client.post(f"/api/v1/sessions/{sid}/events", json=event).status_code == 200
        response = client.post(f"/api/v1/sessions/{sid}/events", json=event)
        assert response.status_code == 409
        assert response.json()["code"] == "STALE_SEQUENCE"

    def test_contradiction_is_409(self, client):
        sid = create(client, RELATION_PROBLEM)["session_id"]
        response = client.post(
            f"/api/v1/sessions/{sid}/events",
            json={"sequence": 1, "kind": "compare", "criterion": "K1",
                  "preferred": "x2", "other": "x1"},
        )
        assert response.status_code == 409
        assert response.json()["code"] == "CONTRADICTORY"

    def test_unknown_session_is_404(self, client):
        response = client.post(
            "/api/v1/sessions/nope/events", json=tighten_event(1, "x3", "K2", 8, 9)
        )
        assert response.status_code == 404
        assert response.json()["code"] == "NOT_FOUND"

    def test_unknown_alt_is_422(self, client):
        sid = create(client)["session_id"]
        response = client.post(
            f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "zz", "K2", 8, 9)
        )
        assert response.status_code == 422
        assert response.json()["code"] == "UNKNOWN_ID"


class TestReads:
    def test_fresh_history(self, client):
        sid = create(client)["session_id"]
        doc = client.get(f"/api/v1/sessions/{sid}/history").json()
        assert doc == {"chain": [["x1", "x3"]], "nesting_ok": True, "baseline_ok": None}

    def test_suggestions_limit_zero(self, client):
        sid = create(client)["session_id"]
        assert client.get(f"/api/v1/sessions/{sid}/suggestions?limit=0").json() == []

    def test_pareto_view(self, client):
        sid = create(client)["session_id"]
        assert client.get(f"/api/v1/sessions/{sid}/pareto").json()["pareto"] == ["x1", "x3"]

    def test_snapshot_shape(self, client):
        sid = create(client, RELATION_PROBLEM)["session_id"]
        doc = client.get(f"/api/v1/sessions/{sid}").json()
        assert doc["kind"] == "relation"
        assert doc["alternatives"] == ["x1", "x2", "x3"]
        assert doc["working"] == [[[1.0, 2.0]], [[0.0, 1.0]], [[0.0, 2.0]]]
        assert doc["next_sequence"] == 1
        assert doc["relations"][0]["pairs"] == [["x1", "x2"]]

    def test_unknown_session_reads_404(self, client):
        for path in ("", "/pareto", "/suggestions", "/history"):
            assert client.get(f"/api/v1/sessions/nope{path}").status_code == 404

    def test_reads_do_not_mutate(self, client):
        sid = create(client)["session_id"]
        before = client.get(f"/api/v1/sessions/{sid}").json()
        client.get(f"/api/v1/sessions/{sid}/pareto")
        client.get(f"/api/v1/sessions/{sid}/history")
        assert client.get(f"/api/v1/sessions/{sid}").json() == before


class TestUndo:
    def test_apply_then_undo(self, client):
        sid = create(client)["session_id"]
        before = client.get(f"/api/v1/sessions/{sid}").json()
        client.post(f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "x3", "K2", 8, 9))
        response = client.post(f"/api/v1/sessions/{sid}/undo")
        assert response.status_code == 200
        assert response.json() == {"pareto": ["x1", "x3"]}
        assert client.get(f"/api/v1/sessions/{sid}").json() == before

    def test_undo_fresh_is_409_empty_log(self, client):
        sid = create(client)["session_id"]
        response = client.post(f"/api/v1/sessions/{sid}/undo")
        assert response.status_code == 409
        assert response.json()["code"] == "EMPTY_LOG"

    def test_double_undo_after_one_event(self, client):
        sid = create(client)["session_id"]
        client.post(f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "x3", "K2", 8, 9))
        assert client.post(f"/api/v1/sessions/{sid}/undo").status_code == 200
        assert client.post(f"/api/v1/sessions/{sid}/undo").status_code == 409


class TestPersistence:
    def test_restart_reloads_sessions(self, state_dir):
        first = TestClient(create_app(state_dir))
        sid = create(first, RELATION_PROBLEM, baseline=["x1"])["session_id"]
        first.post(
            f"/api/v1/sessions/{sid}/events",
            json={"sequence": 1, "kind": "compare", "criterion": "K1",
                  "preferred": "x2", "other": "x3"},
        )
        snapshot = first.get(f"/api/v1/sessions/{sid}").json()

        restarted = TestClient(create_app(state_dir))
        assert restarted.get(f"/api/v1/sessions/{sid}").json() == snapshot
        doc = restarted.get(f"/api/v1/sessions/{sid}/history").json()
        assert doc["nesting_ok"] is True
        assert len(doc["chain"]) == 2

    def test_acknowledged_event_survives_restart(self, state_dir):
        first = TestClient(create_app(state_dir))
        sid = create(first)["session_id"]
        assert (
            first.post(
                f"/api/v1/sessions/{sid}/events", json=tighten_event(1, "x3", "K2", 8, 9)
            ).status_code
            == 200
        )
        restarted = TestClient(create_app(state_dir))
        doc = restarted.get(f"/api/v1/sessions/{sid}").json()
        assert doc["next_sequence"] == 2
        assert doc["working"][2][1] == [8.0, 9.0]

    def test_duplicate_sequence_after_restart(self, state_dir):
        first = TestClient(create_app(state_dir))
        sid = create(first)["session_id"]
        event = tighten_event(1, "x3", "K2", 8, 9)
        first.post(f"/api/v1/sessions/{sid}/events", json=event)
        restarted = TestClient(create_app(state_dir))
        response = restarted.post(f"/api/v1/sessions/{sid}/events", json=event)
        assert response.status_code == 409
        assert response.json()["code"] == "STALE_SEQUENCE"


class TestCors:
    def test_cors_headers_present(self, client):
        response = client.get("/healthz", headers={"Origin": "http://localhost:5173"})
        assert response.headers.get("access-control-allow-origin") == "*"
