from __future__ import annotations

import io
import json

import pytest
from fastapi.testclient import TestClient

from smellvet.cli import main
from smellvet.server import create_app

from conftest import CORPUS


@pytest.fixture()
def served(tmp_path):
    candidates_path = tmp_path / "candidates.json"
    out, err = io.StringIO(), io.StringIO()
    code = main(
        ["scan", str(CORPUS), "--out", str(candidates_path)],
        stdout=out, stderr=err, stdin=io.StringIO(""),
    )
    assert code == 0, err.getvalue()
    session_dir = tmp_path / "sessions"
    app = create_app(candidates_path=candidates_path, session_dir=session_dir)
    client = TestClient(app)
    return client, session_dir, candidates_path


def test_candidates_listing_covers_fixture_corpus(served):
    client, _, _ = served
    resp = client.get("/api/candidates")
    assert resp.status_code == 200
    cands = resp.json()["candidates"]
    assert len(cands) >= 8
    assert {c["smell"] for c in cands} == {
        "data_class", "feature_envy", "god_class", "long_parameter_list",
        "middle_man", "primitive_obsession", "refused_bequest", "speculative_generality",
    }
    assert all("explain" in c for c in cands)


def test_candidate_detail_data_class_has_three_dc_items(served):
    client, _, _ = served
    cands = client.get("/api/candidates").json()["candidates"]
    dc = next(c for c in cands if c["smell"] == "data_class")
    detail = client.get(f"/api/candidates/{dc['id']}").json()
    items = detail["items"]
    assert len(items) == 3
    texts = [entry["item"]["text"] for entry in items]
    assert texts == [
        "Does the class have other methods than getters and setters?",
        "Does the class have other methods than its constructor?",
        "Is the class data being externally manipulated?",
    ]
    assert items[0]["evidence"]["finding"] == "no"


def test_unknown_candidate_is_api_error_shape(served):
    client, _, _ = served
    resp = client.get("/api/candidates/doesnotexist")
    assert resp.status_code == 404
    body = resp.json()
    assert body == {
        "httpStatus": 404,
        "code": "unknown_candidate",
        "message": body["message"],
    }


def test_source_slice_inside_roots_only(served):
    client, _, _ = served
    path = str(CORPUS / "data_class_smelly.java")
    resp = client.get("/api/source", params={"path": path, "start": 3, "end": 5})
    assert resp.status_code == 200
    assert len(resp.json()["lines"]) == 3
    outside = client.get("/api/source", params={"path": "/etc/hostname", "start": 1, "end": 2})
    assert outside.status_code == 404
    bad = client.get("/api/source", params={"path": path, "start": 5, "end": 1})
    assert bad.status_code == 422


def test_session_lifecycle_write_through(served):
    client, session_dir, _ = served
    created = client.post("/api/sessions", json={"reviewerId": "web"})
    assert created.status_code == 201
    session = created.json()
    sid = session["sessionId"]
    on_disk = json.loads((session_dir / f"{sid}.json").read_text())
    assert on_disk["reviewerId"] == "web"

    cid = session["candidateSet"][0]
    answer = client.post(
        f"/api/sessions/{sid}/answers",
        json={"candidateId": cid, "itemId": "DC-1", "answer": "no"},
    )
    assert answer.status_code == 200
    on_disk = json.loads((session_dir / f"{sid}.json").read_text())
    assert on_disk["answers"][cid]["DC-1"] == "no"

    verdict = client.post(
        f"/api/sessions/{sid}/verdicts",
        json={"candidateId": cid, "decision": "accept", "arguments": ["pure data holder"]},
    )
    assert verdict.status_code == 200
    on_disk = json.loads((session_dir / f"{sid}.json").read_text())
    assert on_disk["verdicts"][cid][-1]["decision"] == "accept"


def test_answer_for_wrong_smell_is_422(served):
    client, _, _ = served
    session = client.post("/api/sessions", json={"reviewerId": "web"}).json()
    cid = session["candidateSet"][0]  # data class candidate
    resp = client.post(
        f"/api/sessions/{session['sessionId']}/answers",
        json={"candidateId": cid, "itemId": "MM-1", "answer": "yes"},
    )
    assert resp.status_code == 422
    assert resp.json()["code"] == "schema_violation"


def test_verdict_validation_and_idempotency(served):
    client, session_dir, _ = served
    session = client.post("/api/sessions", json={"reviewerId": "web"}).json()
    sid = session["sessionId"]
    cid = session["candidateSet"][0]

    missing_args = client.post(
        f"/api/sessions/{sid}/verdicts", json={"candidateId": cid, "decision": "accept"}
    )
    assert missing_args.status_code == 422
    assert missing_args.json()["code"] == "unjustified_verdict"

    unknown = client.post(
        f"/api/sessions/{sid}/verdicts",
        json={"candidateId": "nope", "decision": "accept", "arguments": ["x"]},
    )
    assert unknown.status_code == 404
    assert unknown.json()["code"] == "unknown_candidate"

    body = {
        "candidateId": cid,
        "decision": "accept",
        "arguments": ["double submit"],
        "idempotencyKey": "k-1",
    }
    first = client.post(f"/api/sessions/{sid}/verdicts", json=body)
    second = client.post(f"/api/sessions/{sid}/verdicts", json=body)
    assert first.status_code == second.status_code == 200
    on_disk = json.loads((session_dir / f"{sid}.json").read_text())
    assert len(on_disk["verdicts"][cid]) == 1  # one history entry


def test_conflict_when_session_file_changed_on_disk(served):
    client, session_dir, _ = served
    session = client.post("/api/sessions", json={"reviewerId": "web"}).json()
    sid = session["sessionId"]
    cid = session["candidateSet"][0]
    path = session_dir / f"{sid}.json"
    mangled = json.loads(path.read_text())
    mangled["reviewerId"] = "someone-else"
    path.write_text(json.dumps(mangled, indent=2, sort_keys=True) + "\n")

    resp = client.post(
        f"/api/sessions/{sid}/verdicts",
        json={"candidateId": cid, "decision": "accept", "arguments": ["x"]},
    )
    assert resp.status_code == 409
    assert resp.json()["code"] == "verdict_conflict"


def test_schema_violation_bodies_are_api_errors(served):
    client, _, _ = served
    session = client.post("/api/sessions", json={"reviewerId": "web"}).json()
    resp = client.post(
        f"/api/sessions/{session['sessionId']}/verdicts",
        json={"candidateId": 5, "decision": "maybe"},
    )
    assert resp.status_code == 422
    body = resp.json()
    assert set(body) == {"httpStatus", "code", "message"}
    assert body["code"] == "schema_violation"


def test_reports_endpoints(served):
    client, _, _ = served
    for reviewer in ("r1", "r2"):
        session = client.post("/api/sessions", json={"reviewerId": reviewer}).json()
        sid = session["sessionId"]
        for cid in session["candidateSet"]:
            client.post(
                f"/api/sessions/{sid}/verdicts",
                json={"candidateId": cid, "decision": "accept", "arguments": ["same view"]},
            )
    stats = client.get("/api/reports/stats")
    assert stats.status_code == 200
    assert stats.json()["stats"]["validations"] == 16

    agreement = client.get("/api/reports/agreement")
    assert agreement.status_code == 200
    overall = agreement.json()["reports"][0]
    assert overall["raters"] == 2
    assert overall["kappa"] is None  # unanimous accepts: single used category


def test_agreement_endpoint_disjoint_sets_is_conflict(served, tmp_path):
    client, session_dir, _ = served
    session = client.post("/api/sessions", json={"reviewerId": "r1"}).json()
    partial = client.post(
        "/api/sessions",
        json={"reviewerId": "r2", "candidateIds": session["candidateSet"][:2]},
    )
    assert partial.status_code == 201
    resp = client.get("/api/reports/agreement")
    assert resp.status_code == 409
    assert resp.json()["code"] == "disjoint_candidate_sets"


def test_static_ui_served_when_built(tmp_path):
    candidates_path = tmp_path / "candidates.json"
    out, err = io.StringIO(), io.StringIO()
    code = main(
        ["scan", str(CORPUS), "--out", str(candidates_path)],
        stdout=out, stderr=err, stdin=io.StringIO(""),
    )
    assert code == 0
    ui_dir = tmp_path / "dist"
    ui_dir.mkdir()
    (ui_dir / "index.html").write_text("<html><body>review ui</body></html>")
    app = create_app(
        candidates_path=candidates_path,
        session_dir=tmp_path / "sessions",
        ui_dir=ui_dir,
    )
    client = TestClient(app)
    resp = client.get("/")
    assert resp.status_code == 200
    assert "review ui" in resp.text
    assert client.get("/api/candidates").status_code == 200
