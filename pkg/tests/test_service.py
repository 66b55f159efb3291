import concurrent.futures
import json

import pytest
from fastapi.testclient import TestClient

from conftest import SENATE_GOLD_TSV, SENATE_RAW
from factoie.io_formats import load_state, save_state
from factoie.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(tmp_path / "data")
    with TestClient(app) as client:
        yield client


def upload(client, body: bytes) -> str:
    response = client.post("/api/sessions", content=body)
    assert response.status_code == 201
    return response.json()["session_id"]


class TestSessions:
    def test_upload_plain_text(self, client):
        response = client.post(
            "/api/sessions", content=b"He was a judge.\nShe is an engineer.\n"
        )
        assert response.status_code == 201
        assert response.json()["sentence_count"] == 2

    def test_upload_json_array(self, client):
        body = json.dumps([{"id": "sent1", "text": SENATE_RAW}]).encode()
        response = client.post("/api/sessions", content=body)
        assert response.status_code == 201
        assert response.json()["sentence_count"] == 1

    def test_upload_empty_body(self, client):
        response = client.post("/api/sessions", content=b"")
        assert response.status_code == 400
        assert response.json()["error"] == "empty_input"

    def test_upload_duplicate_ids(self, client):
        body = json.dumps(
            [{"id": "a", "text": "one two"}, {"id": "a", "text": "three"}]
        ).encode()
        response = client.post("/api/sessions", content=body)
        assert response.status_code == 400
        assert response.json()["error"] == "duplicate_id"


class TestSentences:
    def test_get_tagged_sentence(self, client):
        session_id = upload(client, b"Edmund Barton was born in Australia.\n")
        response = client.get(f"/api/sessions/{session_id}/sentences/s1")
        assert response.status_code == 200
        payload = response.json()
        assert [t["text"] for t in payload["tokens"]] == [
            "Edmund", "Barton", "was", "born", "in", "Australia", ".",
        ]
        assert payload["tokens"][2]["highlight"] == "VERB"
        assert payload["tokens"][5]["highlight"] == "NAMED_ENTITY"

    def test_unknown_sentence(self, client):
        session_id = upload(client, b"one two\n")
        assert client.get(f"/api/sessions/{session_id}/sentences/zz").status_code == 404

    def test_unknown_session(self, client):
        assert client.get("/api/sessions/nope/sentences/s1").status_code == 404


@pytest.fixture()
def senate_session(client, senate_state):
    body = json.dumps([{"id": "sent1", "text": SENATE_RAW}]).encode()
    session_id = upload(client, body)
    return session_id


class TestState:
    def test_put_then_get_verbatim(self, client, senate_session, senate_state):
        data = save_state(senate_state)
        response = client.put(f"/api/sessions/{senate_session}/state", content=data)
        assert response.status_code == 204
        fetched = client.get(f"/api/sessions/{senate_session}/state")
        assert fetched.content == data

    def test_put_rejects_bad_schema(self, client, senate_session):
        response = client.put(
            f"/api/sessions/{senate_session}/state", content=b'{"version": "1"}'
        )
        assert response.status_code == 400
        assert response.json()["error"] == "schema_violation"

    def test_put_rejects_foreign_sentences(self, client, senate_session, senate_state):
        doc = json.loads(save_state(senate_state))
        foreign = dict(doc["sentences"][0], id="intruder")
        doc["sentences"] = doc["sentences"] + [foreign]
        response = client.put(
            f"/api/sessions/{senate_session}/state",
            content=json.dumps(doc).encode(),
        )
        assert response.status_code == 409

    def test_concurrent_puts_last_write_wins(self, client, senate_session, senate_state):
        bodies = []
        for n in range(8):
            state = load_state(save_state(senate_state))
            state.meta["writer"] = f"w{n}"
            bodies.append(save_state(state))

        def put(body):
            return client.put(
                f"/api/sessions/{senate_session}/state", content=body
            ).status_code

        with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
            assert set(pool.map(put, bodies)) == {204}
        final = client.get(f"/api/sessions/{senate_session}/state").content
        assert final in bodies


class TestExport:
    def test_tsv_export_matches_fixture(self, client, senate_session, senate_state):
        client.put(
            f"/api/sessions/{senate_session}/state", content=save_state(senate_state)
        )
        response = client.get(f"/api/sessions/{senate_session}/export?format=tsv")
        assert response.status_code == 200
        assert response.content == SENATE_GOLD_TSV.encode()
        assert response.headers["content-type"].startswith("text/tab-separated-values")
        assert "attachment" in response.headers["content-disposition"]

    def test_json_export_round_trips(self, client, senate_session, senate_state):
        client.put(
            f"/api/sessions/{senate_session}/state", content=save_state(senate_state)
        )
        response = client.get(f"/api/sessions/{senate_session}/export?format=json")
        assert response.status_code == 200
        assert load_state(response.content) == senate_state

    def test_unknown_format(self, client, senate_session):
        response = client.get(f"/api/sessions/{senate_session}/export?format=xml")
        assert response.status_code == 400

    def test_unknown_session(self, client):
        assert client.get("/api/sessions/nope/export?format=tsv").status_code == 404


class TestLint:
    def test_clean_state(self, client, senate_session):
        response = client.get(f"/api/sessions/{senate_session}/lint")
        assert response.status_code == 200
        assert response.json() == {"diagnostics": []}

    def test_duplicate_template_reports_overlap(self, client, senate_session, senate_state):
        doc = json.loads(save_state(senate_state))
        synsets = doc["synsets"]["sent1"]
        clone = json.loads(json.dumps(synsets[1]))
        clone["id"] = "f2-copy"
        doc["synsets"]["sent1"] = synsets + [clone]
        assert (
            client.put(
                f"/api/sessions/{senate_session}/state",
                content=json.dumps(doc).encode(),
            ).status_code
            == 204
        )
        payload = client.get(f"/api/sessions/{senate_session}/lint").json()
        codes = {d["code"] for d in payload["diagnostics"]}
        assert "GOLD_OVERLAP" in codes
        overlap_ids = {
            d["synset_id"]
            for d in payload["diagnostics"]
            if d["code"] == "GOLD_OVERLAP"
        }
        assert overlap_ids == {"f2", "f2-copy"}

    def test_diagnostics_order_stable(self, client, senate_session, senate_state):
        client.put(
            f"/api/sessions/{senate_session}/state", content=save_state(senate_state)
        )
        first = client.get(f"/api/sessions/{senate_session}/lint").json()
        second = client.get(f"/api/sessions/{senate_session}/lint").json()
        assert first == second


class TestPersistence:
    def test_sessions_survive_restart(self, tmp_path, senate_state):
        data_dir = tmp_path / "data"
        with TestClient(create_app(data_dir)) as client:
            body = json.dumps([{"id": "sent1", "text": SENATE_RAW}]).encode()
            session_id = upload(client, body)
            client.put(
                f"/api/sessions/{session_id}/state", content=save_state(senate_state)
            )
        # a brand-new app over the same directory sees the same state
        with TestClient(create_app(data_dir)) as client:
            fetched = client.get(f"/api/sessions/{session_id}/state")
            assert fetched.status_code == 200
            assert fetched.content == save_state(senate_state)

    def test_no_temp_files_left_behind(self, tmp_path, senate_state):
        data_dir = tmp_path / "data"
        with TestClient(create_app(data_dir)) as client:
            body = json.dumps([{"id": "sent1", "text": SENATE_RAW}]).encode()
            session_id = upload(client, body)
            client.put(
                f"/api/sessions/{session_id}/state", content=save_state(senate_state)
            )
        leftovers = [p.name for p in data_dir.iterdir() if p.suffix != ".json"]
        assert leftovers == []


FRONTEND_DIST = __import__("pathlib").Path(__file__).resolve().parents[1] / "frontend" / "dist"


@pytest.mark.skipif(
    not (FRONTEND_DIST / "index.html").is_file(), reason="frontend not built"
)
class TestStaticUi:
    def test_ui_served_at_root(self, tmp_path):
        app = create_app(tmp_path / "data", static_dir=FRONTEND_DIST)
        with TestClient(app) as client:
            page = client.get("/")
            assert page.status_code == 200
            assert b'<main id="app">' in page.content
            assert client.get("/js/main.js").status_code == 200
            assert client.get("/styles.css").status_code == 200

    def test_api_still_reachable_with_static_mount(self, tmp_path):
        app = create_app(tmp_path / "data", static_dir=FRONTEND_DIST)
        with TestClient(app) as client:
            assert client.get("/api/health").json() == {"status": "ok"}
