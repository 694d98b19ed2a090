from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from learnopt import Assignment, kappa
from learnopt.harness.service import create_app

from test_harness import chain3_problem_dict


@pytest.fixture
def client():
    return TestClient(create_app())


def interactive_chain3():
    return chain3_problem_dict(oracle={"type": "interactive"}, cutoff_seconds=30.0)


def wait_for(predicate, timeout=10.0, interval=0.005):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        value = predicate()
        if value is not None:
            return value
        time.sleep(interval)
    raise AssertionError("timed out waiting for the session")


def poll_query(client, sid):
    def probe():
        r = client.get(f"/sessions/{sid}/query")
        if r.status_code == 200:
            return r.json()
        state = client.get(f"/sessions/{sid}").json()
        if state["status"] not in ("starting", "running"):
            return {"terminal": state}
        return None

    return wait_for(probe)


def truthful_answer(chain3, bindings) -> str:
    return "no" if kappa(chain3.target, Assignment(bindings)) else "yes"


def drive_to_completion(client, sid, chain3):
    for _ in range(100):
        got = poll_query(client, sid)
        if "terminal" in got:
            return got["terminal"]
        answer = truthful_answer(chain3, got["bindings"])
        r = client.post(
            f"/sessions/{sid}/answer",
            json={"query_id": got["query_id"], "answer": answer},
        )
        assert r.status_code == 200
    raise AssertionError("session did not finish in 100 queries")


# --- lifecycle -------------------------------------------------------------


def test_interactive_session_reaches_the_optimum(client, chain3):
    r = client.post("/sessions", json=interactive_chain3())
    assert r.status_code == 200
    sid = r.json()["session_id"]

    first = poll_query(client, sid)
    assert first["bindings"] == {"x1": 1, "x2": 1, "x3": 1}
    assert first["partial"] is False

    answer = truthful_answer(chain3, first["bindings"])
    assert client.post(
        f"/sessions/{sid}/answer", json={"query_id": first["query_id"], "answer": answer}
    ).status_code == 200

    final = drive_to_completion(client, sid, chain3)
    assert final["status"] == "optimal"
    assert final["lb"] == final["ub"] == 6
    assert sorted(final["learned_constraints"]) == ["x1 < x2", "x2 < x3"]

    # displayed numbers equal the authoritative log
    log_lines = client.get(f"/sessions/{sid}/log").text.strip().splitlines()
    events = [json.loads(line) for line in log_lines]
    terminated = [e for e in events if e["event"] == "terminated"][-1]
    assert terminated["lb"] == final["lb"]
    assert terminated["ub"] == final["ub"]
    assert len([e for e in events if e["event"] == "learned"]) == len(
        final["learned_constraints"]
    )


def test_simulated_session_runs_unattended(client):
    r = client.post("/sessions", json=chain3_problem_dict())
    sid = r.json()["session_id"]
    state = wait_for(
        lambda: (
            client.get(f"/sessions/{sid}").json()
            if client.get(f"/sessions/{sid}").json()["status"] not in ("starting", "running")
            else None
        )
    )
    assert state["status"] == "optimal"
    assert state["lb"] == state["ub"] == 6
    # nothing is ever pending for a simulated oracle
    assert client.get(f"/sessions/{sid}/query").status_code == 204


def test_two_sessions_are_isolated(client, chain3):
    a = client.post("/sessions", json=interactive_chain3()).json()["session_id"]
    b = client.post("/sessions", json=interactive_chain3()).json()["session_id"]
    qa = poll_query(client, a)
    qb = poll_query(client, b)
    # answer only session a; session b keeps its pending query
    client.post(f"/sessions/{a}/answer", json={"query_id": qa["query_id"], "answer": "no"})
    still = client.get(f"/sessions/{b}/query")
    assert still.status_code == 200
    assert still.json()["query_id"] == qb["query_id"]
    final_a = drive_to_completion(client, a, chain3)
    assert final_a["status"] == "optimal"
    assert client.get(f"/sessions/{b}").json()["status"] == "running"


# --- protocol rules ----------------------------------------------------------


def test_answer_without_pending_query_is_409(client):
    sid = client.post("/sessions", json=chain3_problem_dict()).json()["session_id"]
    wait_for(
        lambda: (
            True
            if client.get(f"/sessions/{sid}").json()["status"] not in ("starting", "running")
            else None
        )
    )
    r = client.post(f"/sessions/{sid}/answer", json={"query_id": 1, "answer": "yes"})
    assert r.status_code == 409


def test_double_answer_is_409(client, chain3):
    sid = client.post("/sessions", json=interactive_chain3()).json()["session_id"]
    got = poll_query(client, sid)
    body = {"query_id": got["query_id"], "answer": truthful_answer(chain3, got["bindings"])}
    assert client.post(f"/sessions/{sid}/answer", json=body).status_code == 200
    second = client.post(f"/sessions/{sid}/answer", json=body)
    assert second.status_code == 409


def test_stale_query_id_is_409(client):
    sid = client.post("/sessions", json=interactive_chain3()).json()["session_id"]
    got = poll_query(client, sid)
    r = client.post(
        f"/sessions/{sid}/answer",
        json={"query_id": got["query_id"] + 41, "answer": "yes"},
    )
    assert r.status_code == 409


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.get("/sessions/nope/query").status_code == 404
    assert client.post("/sessions/nope/answer", json={"query_id": 1, "answer": "yes"}).status_code == 404


def test_invalid_problem_is_422(client):
    r = client.post("/sessions", json={})
    assert r.status_code == 422
    assert "variables" in r.json()["detail"]
    bad_seed = chain3_problem_dict(seed_solution={"x1": 3, "x2": 2, "x3": 1})
    r = client.post("/sessions", json=bad_seed)
    assert r.status_code == 422
    assert "seed_solution" in r.json()["detail"]


def test_malformed_answer_body_is_422(client):
    sid = client.post("/sessions", json=interactive_chain3()).json()["session_id"]
    poll_query(client, sid)
    r = client.post(f"/sessions/{sid}/answer", json={"query_id": 1, "answer": "maybe"})
    assert r.status_code == 422
