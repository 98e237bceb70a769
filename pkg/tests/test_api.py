import json

import pytest
from fastapi.testclient import TestClient

from coachd.service.app import CoachService, create_app
from coachd.service.config import ServiceConfig
from coachd.service.events import EventLog, replay, snapshot_hash


@pytest.fixture()
def client(tmp_path):
    config = ServiceConfig(log_path=str(tmp_path / "events.jsonl"))
    ticks = iter(range(1_000, 1_000_000))
    service = CoachService(config, clock=lambda: next(ticks))
    with TestClient(create_app(service)) as test_client:
        yield test_client


def _seed_workers(client, *specs):
    for worker_id, tasks in specs:
        response = client.post(
            "/workers", json={"worker_id": worker_id, "tasks_completed": tasks}
        )
        assert response.status_code == 201, response.text


class TestWorkers:
    def test_register(self, client):
        response = client.post("/workers", json={"worker_id": "w1", "tasks_completed": 12})
        assert response.status_code == 201
        body = response.json()
        assert body["worker_id"] == "w1"
        assert body["tasks_completed"] == 12

    def test_duplicate_rejected(self, client):
        _seed_workers(client, ("w1", 0))
        response = client.post("/workers", json={"worker_id": "w1", "tasks_completed": 0})
        assert response.status_code == 400
        assert response.json()["error"] == "DuplicateId"

    def test_negative_tasks_rejected(self, client):
        response = client.post("/workers", json={"worker_id": "w1", "tasks_completed": -1})
        assert response.status_code == 400

    def test_missing_field_is_400(self, client):
        response = client.post("/workers", json={"worker_id": "w1"})
        assert response.status_code == 400
        assert response.json()["error"] == "InvalidPayload"


class TestSnippets:
    def test_create_and_fetch(self, client):
        _seed_workers(client, ("w1", 5))
        response = client.post(
            "/snippets",
            json={"worker_id": "w1", "task_type": "Survey", "text": "  read  carefully "},
        )
        assert response.status_code == 201
        body = response.json()
        assert body["snippet_id"] == "s000001"
        assert body["text"] == "read carefully"

        fetched = client.get("/snippets/s000001")
        assert fetched.status_code == 200
        assert fetched.json()["score"] == {
            "assessment_count": 0,
            "credit_score": 0.0,
            "raw_score": 0,
        }

    def test_101_chars_rejected(self, client):
        _seed_workers(client, ("w1", 5))
        response = client.post(
            "/snippets",
            json={"worker_id": "w1", "task_type": "Survey", "text": "x" * 101},
        )
        assert response.status_code == 400
        assert response.json()["error"] == "TooLong"

    def test_100_chars_accepted(self, client):
        _seed_workers(client, ("w1", 5))
        response = client.post(
            "/snippets",
            json={"worker_id": "w1", "task_type": "Survey", "text": "x" * 100},
        )
        assert response.status_code == 201

    def test_unknown_task_type(self, client):
        _seed_workers(client, ("w1", 5))
        response = client.post(
            "/snippets", json={"worker_id": "w1", "task_type": "Quiz", "text": "hello"}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "UnknownTaskType"

    def test_unknown_author_404(self, client):
        response = client.post(
            "/snippets", json={"worker_id": "ghost", "task_type": "Survey", "text": "hello"}
        )
        assert response.status_code == 404

    def test_unknown_snippet_404(self, client):
        assert client.get("/snippets/s999999").status_code == 404


class TestVotes:
    def _seed_snippet(self, client):
        _seed_workers(client, ("author", 5), ("voter", 9))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "tip"}
        )

    def test_vote_and_score(self, client):
        self._seed_snippet(client)
        response = client.post(
            "/votes", json={"worker_id": "voter", "snippet_id": "s000001", "direction": "up"}
        )
        assert response.status_code == 201
        assert response.json()["assessment_id"] == "a000001"
        assert client.get("/snippets/s000001").json()["score"]["raw_score"] == 1

    def test_duplicate_vote_rejected(self, client):
        self._seed_snippet(client)
        body = {"worker_id": "voter", "snippet_id": "s000001", "direction": "up"}
        assert client.post("/votes", json=body).status_code == 201
        second = client.post("/votes", json={**body, "direction": "down"})
        assert second.status_code == 400
        assert second.json()["error"] == "DuplicateVote"

    def test_self_vote_rejected(self, client):
        self._seed_snippet(client)
        response = client.post(
            "/votes", json={"worker_id": "author", "snippet_id": "s000001", "direction": "up"}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "SelfVote"

    def test_bad_direction_rejected(self, client):
        self._seed_snippet(client)
        response = client.post(
            "/votes",
            json={"worker_id": "voter", "snippet_id": "s000001", "direction": "sideways"},
        )
        assert response.status_code == 400

    def test_unknown_snippet_404(self, client):
        _seed_workers(client, ("voter", 5))
        response = client.post(
            "/votes", json={"worker_id": "voter", "snippet_id": "shrug", "direction": "up"}
        )
        assert response.status_code == 404


class TestDisplay:
    def test_exploration_slot_is_unvoted_snippet(self, client):
        _seed_workers(
            client, ("author", 5), ("reader", 7), *[(f"v{i}", 3) for i in range(3)]
        )
        for i in range(11):
            client.post(
                "/snippets",
                json={"worker_id": "author", "task_type": "Survey", "text": f"tip {i}"},
            )
        # Vote on the first 10; snippet 11 stays unvoted.
        for i in range(1, 11):
            for voter in ("v0", "v1", "v2")[: (i % 3) + 1]:
                client.post(
                    "/votes",
                    json={
                        "worker_id": voter,
                        "snippet_id": f"s{i:06d}",
                        "direction": "up",
                    },
                )
        response = client.get(
            "/display", params={"worker_id": "reader", "task_type": "Survey", "page": 0}
        )
        assert response.status_code == 200
        body = response.json()
        assert len(body["slots"]) == 4
        assert body["exploration_slot"] == 3
        assert body["slots"][3]["snippet_id"] == "s000011"
        assert body["slots"][3]["exploration"] is True
        assert all(slot["exploration"] is False for slot in body["slots"][:3])
        assert all("text" in slot and "raw_score" in slot for slot in body["slots"])

    def test_paging_does_not_repeat(self, client):
        _seed_workers(client, ("author", 5), ("reader", 7))
        for i in range(9):
            client.post(
                "/snippets",
                json={"worker_id": "author", "task_type": "Survey", "text": f"tip {i}"},
            )
        seen = set()
        for page in range(2):
            body = client.get(
                "/display",
                params={"worker_id": "reader", "task_type": "Survey", "page": page},
            ).json()
            ids = {slot["snippet_id"] for slot in body["slots"]}
            assert not ids & seen
            seen |= ids

    def test_own_snippets_never_served(self, client):
        _seed_workers(client, ("author", 5), ("other", 3))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "mine"}
        )
        body = client.get(
            "/display", params={"worker_id": "author", "task_type": "Survey"}
        ).json()
        assert body["slots"] == []

    def test_empty_type_gives_empty_page(self, client):
        _seed_workers(client, ("reader", 7))
        body = client.get(
            "/display", params={"worker_id": "reader", "task_type": "Writing"}
        ).json()
        assert body["slots"] == []
        assert body["exploration_slot"] is None

    def test_unknown_worker_404(self, client):
        response = client.get(
            "/display", params={"worker_id": "nobody", "task_type": "Survey"}
        )
        assert response.status_code == 404


class TestAdminAndStats:
    def test_every_mutation_appends_one_event(self, client, tmp_path):
        assert client.get("/admin/hash").json()["event_count"] == 0
        _seed_workers(client, ("author", 5), ("voter", 3))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "tip"}
        )
        client.post(
            "/votes", json={"worker_id": "voter", "snippet_id": "s000001", "direction": "up"}
        )
        client.get("/display", params={"worker_id": "voter", "task_type": "Survey"})
        assert client.get("/admin/hash").json()["event_count"] == 5

    def test_rejected_calls_append_nothing(self, client):
        _seed_workers(client, ("author", 5))
        count = client.get("/admin/hash").json()["event_count"]
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "x" * 300}
        )
        assert client.get("/admin/hash").json()["event_count"] == count

    def test_hash_matches_log_replay(self, client, tmp_path):
        _seed_workers(client, ("author", 5), ("voter", 3))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "tip"}
        )
        client.post(
            "/votes", json={"worker_id": "voter", "snippet_id": "s000001", "direction": "up"}
        )
        reported = client.get("/admin/hash").json()["state_hash"]
        events = EventLog(tmp_path / "events.jsonl").read()
        assert snapshot_hash(replay(events)) == reported

    def test_deployment_stats_shape(self, client):
        _seed_workers(client, ("author", 5), ("voter", 3))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Writing", "text": "tip"}
        )
        client.post(
            "/votes", json={"worker_id": "voter", "snippet_id": "s000001", "direction": "down"}
        )
        body = client.get("/stats/deployment").json()
        assert body["Writing"]["snippet_total"] == 1
        assert body["Writing"]["score_min"] == -1
        assert set(body) == {
            "AudioTranscription", "Categorization", "DataCollection",
            "ImageTranscription", "ImageTagging", "Survey", "Writing", "Other",
        }

    def test_responses_are_canonical_json(self, client):
        _seed_workers(client, ("w1", 2))
        raw = client.get("/admin/hash").content.decode()
        data = json.loads(raw)
        assert raw == json.dumps(data, sort_keys=True, separators=(",", ":"))

    def test_service_restart_replays_log(self, client, tmp_path):
        _seed_workers(client, ("author", 5), ("voter", 3))
        client.post(
            "/snippets", json={"worker_id": "author", "task_type": "Survey", "text": "tip"}
        )
        reported = client.get("/admin/hash").json()
        config = ServiceConfig(log_path=str(tmp_path / "events.jsonl"))
        reopened = CoachService(config)
        assert reopened.state.event_count == reported["event_count"]
        assert snapshot_hash(reopened.state) == reported["state_hash"]
