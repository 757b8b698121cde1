import pytest
from fastapi.testclient import TestClient

from conftest import STORY_LINES
from mindstream.priority import PriorityFunction
from mindstream.service import create_app
from mindstream.session import Mode, Session, SessionConfig, snapshot_to_document


@pytest.fixture()
def story_client(story_session):
    return TestClient(create_app(story_session)), story_session


@pytest.fixture()
def raw_client(lexicon):
    session = Session(SessionConfig(mode=Mode.RAW), lexicon=lexicon)
    return TestClient(create_app(session)), session


class TestActors:
    def test_listing_after_ingest(self, story_client):
        client, _ = story_client
        response = client.get("/actors")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["payload"] == ["Wolf", "Jäger", "Frau", "Bett"]
        assert "error" not in body

    def test_empty_session(self):
        client = TestClient(create_app(Session()))
        assert client.get("/actors").json()["payload"] == []


class TestSnapshotEndpoint:
    def test_payload_matches_engine_snapshot(self, story_client):
        client, session = story_client
        response = client.get("/actors/Jäger/snapshot", params={"fn": "f2", "c": 9})
        assert response.status_code == 200
        expected = snapshot_to_document(session.snapshot("Jäger", PriorityFunction.F2, 9))
        assert response.json()["payload"] == expected

    def test_delta_override(self, story_client):
        client, _ = story_client
        response = client.get(
            "/actors/Jäger/snapshot", params={"fn": "f3", "delta": 0.2}
        )
        assert response.json()["payload"]["delta"] == 0.2

    def test_unknown_actor_404(self, story_client):
        client, _ = story_client
        response = client.get("/actors/Niemand/snapshot")
        assert response.status_code == 404
        body = response.json()
        assert body["status"] == "error"
        assert body["error"]["code"] == "UNKNOWN_ACTOR"
        assert "payload" not in body

    def test_future_c_422(self, story_client):
        client, _ = story_client
        response = client.get("/actors/Wolf/snapshot", params={"c": 99})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "FUTURE_POSITION"

    def test_unknown_function_422(self, story_client):
        client, _ = story_client
        response = client.get("/actors/Wolf/snapshot", params={"fn": "f9"})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "INVALID_INPUT"


class TestStreamStep:
    def test_annotated_step(self):
        session = Session()
        client = TestClient(create_app(session))
        response = client.post("/stream/step", json={"input": "Wolf|legen|Bett|-"})
        payload = response.json()["payload"]
        assert payload["emitted"] == ["Wolf|legen|Bett|1"]
        assert payload["new_actors"] == ["Wolf"]

    def test_pronoun_sentence_yields_pending_request(self, raw_client):
        client, _ = raw_client
        client.post("/stream/step", json={"input": "Der Wolf legte sich ins Bett."})
        response = client.post("/stream/step", json={"input": "Er trat ins Haus ein."})
        payload = response.json()["payload"]
        assert payload["emitted"] == []
        (request,) = payload["pending"]
        assert request["kind"] == "PRONOUN_BINDING"
        assert request["candidates"] == ["Wolf"]

    def test_interrogative_reported_as_drop(self, raw_client):
        client, _ = raw_client
        response = client.post("/stream/step", json={"input": "Wer bist du?"})
        payload = response.json()["payload"]
        assert payload["dropped"][0]["reason"] == "INTERROGATIVE"

    def test_malformed_wire_line_422(self):
        client = TestClient(create_app(Session()))
        response = client.post("/stream/step", json={"input": "Wolf|legen"})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "WIRE_FORMAT"

    def test_missing_body_field_422(self):
        client = TestClient(create_app(Session()))
        response = client.post("/stream/step", json={"text": "nope"})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "VALIDATION"


class TestResolutions:
    def _pending(self, client):
        client.post("/stream/step", json={"input": "Der Wolf legte sich ins Bett."})
        client.post("/stream/step", json={"input": "Der Jäger ging vorbei."})
        response = client.post("/stream/step", json={"input": "Er trat ins Haus ein."})
        return response.json()["payload"]["pending"][0]

    def test_listing_and_resolution(self, raw_client):
        client, _ = raw_client
        request = self._pending(client)
        listed = client.get("/resolutions").json()["payload"]
        assert [r["request_id"] for r in listed] == [request["request_id"]]
        response = client.post(
            f"/resolutions/{request['request_id']}", json={"actor": "Jäger"}
        )
        payload = response.json()["payload"]
        assert payload["emitted"] == ["Jäger|eintreten|Haus|3"]
        assert client.get("/resolutions").json()["payload"] == []

    def test_discard(self, raw_client):
        client, _ = raw_client
        request = self._pending(client)
        response = client.post(
            f"/resolutions/{request['request_id']}", json={"discard": True}
        )
        payload = response.json()["payload"]
        assert payload["dropped"][0]["reason"] == "SUPERVISOR_DISCARD"

    def test_unknown_request_404(self, raw_client):
        client, _ = raw_client
        response = client.post("/resolutions/zzz", json={"actor": "Wolf"})
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "UNKNOWN_REQUEST"

    def test_stale_request_409(self, raw_client):
        client, _ = raw_client
        request = self._pending(client)
        client.post(f"/resolutions/{request['request_id']}", json={"actor": "Jäger"})
        response = client.post(
            f"/resolutions/{request['request_id']}", json={"actor": "Wolf"}
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "STALE_REQUEST"

    def test_actor_and_discard_are_mutually_exclusive(self, raw_client):
        client, _ = raw_client
        request = self._pending(client)
        response = client.post(
            f"/resolutions/{request['request_id']}",
            json={"actor": "Wolf", "discard": True},
        )
        assert response.status_code == 422


class TestSessionExport:
    def test_mutations_visible_in_export(self, raw_client):
        client, session = raw_client
        client.post("/stream/step", json={"input": "Der Wolf legte sich ins Bett."})
        client.post("/stream/step", json={"input": "Wer bist du?"})
        document = client.get("/session").json()["payload"]
        assert document == session.to_document()
        assert document["store"]["event_log"] == ["Wolf|legen|Bett|1"]
        assert document["dropped"][0]["reason"] == "INTERROGATIVE"

    def test_dropped_endpoint(self, raw_client):
        client, _ = raw_client
        client.post("/stream/step", json={"input": "Wer bist du?"})
        dropped = client.get("/dropped").json()["payload"]
        assert dropped == [
            {"context": "s1", "reason": "INTERROGATIVE", "text": "Wer bist du?"}
        ]

    def test_ingested_listing_round_trips_through_service(self):
        session = Session()
        client = TestClient(create_app(session))
        for line in STORY_LINES:
            client.post("/stream/step", json={"input": line})
        document = client.get("/session").json()["payload"]
        restored = Session.from_document(document)
        assert restored.actors() == ["Wolf", "Jäger", "Frau", "Bett"]
