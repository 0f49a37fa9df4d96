import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from morphforge.pipeline import DatasetManifest, load_manifest, save_manifest
from morphforge.pipeline.manifest import AttackRecord
from morphforge.pipeline.pairing import MorphPair
from morphforge.review import ReviewDecision, ReviewStore, create_app, replay_audit


@pytest.fixture()
def manifest_25(tmp_path):
    """25 pending attacks over a 26-image pool, no image files needed."""
    pool = [f"p{i:02d}" for i in range(26)]
    pairs = [MorphPair(pool[0], pool[i], i / 30.0, 1000 + i) for i in range(1, 26)]
    attacks = [
        AttackRecord(p.attack_id, p.key_id, p.partner_id, auto={"passed": True}) for p in pairs
    ]
    manifest = DatasetManifest(
        split="train", seed=5, bonafide=["b1", "b2"], pool=pool, pairs=pairs, attacks=attacks
    )
    path = tmp_path / "manifest.json"
    save_manifest(path, manifest)
    return path


@pytest.fixture()
def client(manifest_25):
    store = ReviewStore(manifest_25)
    return TestClient(create_app(store)), store, manifest_25


def test_pagination_three_stable_pages(client):
    api, _, _ = client
    seen = []
    for page in range(3):
        body = api.get("/candidates", params={"status": "pending", "page": page, "page_size": 10}).json()
        assert body["pages"] == 3
        assert body["total"] == 25
        seen.extend(item["attack_id"] for item in body["items"])
    assert len(seen) == 25 and len(set(seen)) == 25
    again = api.get("/candidates", params={"status": "pending", "page": 0, "page_size": 10}).json()
    assert [i["attack_id"] for i in again["items"]] == seen[:10]


def test_candidate_payload_carries_pair_provenance(client):
    api, _, _ = client
    item = api.get("/candidates", params={"page_size": 1}).json()["items"][0]
    assert item["morph_url"] == f"/image/{item['attack_id']}"
    assert item["source_a_url"] == f"/image/{item['key_id']}"
    assert item["source_b_url"] == f"/image/{item['partner_id']}"
    assert 0.0 <= item["warp"] <= 1.0
    assert item["auto"] == {"passed": True}


def test_rejected_filter_empty_on_fresh_run(client):
    api, _, _ = client
    body = api.get("/candidates", params={"status": "rejected"}).json()
    assert body["total"] == 0 and body["items"] == []


def test_unknown_status_filter_rejected(client):
    api, _, _ = client
    assert api.get("/candidates", params={"status": "bogus"}).status_code == 422


def test_decision_flow_idempotent_and_conflicting(client):
    api, store, path = client
    target = api.get("/candidates", params={"page_size": 1}).json()["items"][0]["attack_id"]

    first = api.post("/decision", json={"attack_id": target, "verdict": "rejected", "reason": "seam"})
    assert first.status_code == 200 and first.json()["changed"] is True

    repeat = api.post("/decision", json={"attack_id": target, "verdict": "rejected"})
    assert repeat.status_code == 200 and repeat.json()["changed"] is False

    conflict = api.post("/decision", json={"attack_id": target, "verdict": "accepted"})
    assert conflict.status_code == 409

    missing = api.post("/decision", json={"attack_id": "nope", "verdict": "accepted"})
    assert missing.status_code == 404

    audit_lines = store.audit_path.read_text().splitlines()
    assert len(audit_lines) == 1  # idempotent repeat logged nothing


def test_decision_visible_in_next_list_and_summary(client):
    api, _, _ = client
    target = api.get("/candidates", params={"page_size": 1}).json()["items"][0]["attack_id"]
    api.post("/decision", json={"attack_id": target, "verdict": "accepted"})
    pending = api.get("/candidates", params={"status": "pending"}).json()
    assert target not in [i["attack_id"] for i in pending["items"]]
    summary = api.get("/manifest/summary").json()
    assert summary["counts"]["accepted"] == 1
    assert summary["counts"]["pending"] == 24
    assert summary["total"] == 25


def test_manifest_on_disk_tracks_decisions(client):
    api, _, path = client
    ids = [i["attack_id"] for i in api.get("/candidates", params={"page_size": 3}).json()["items"]]
    api.post("/decision", json={"attack_id": ids[0], "verdict": "accepted"})
    api.post("/decision", json={"attack_id": ids[1], "verdict": "rejected", "reason": "halo"})
    stored = load_manifest(path)
    assert stored.attack(ids[0]).status == "accepted"
    assert stored.attack(ids[1]).status == "rejected"
    assert stored.attack(ids[1]).reject_reason == "halo"
    assert stored.attack(ids[2]).status == "pending"


def test_audit_log_replays_to_manifest_state(client):
    api, store, path = client
    ids = [i["attack_id"] for i in api.get("/candidates", params={"page_size": 5}).json()["items"]]
    api.post("/decision", json={"attack_id": ids[0], "verdict": "accepted"})
    api.post("/decision", json={"attack_id": ids[1], "verdict": "rejected", "reason": "edge"})
    api.post("/decision", json={"attack_id": ids[2], "verdict": "accepted"})

    fresh = DatasetManifest.from_dict(
        {**load_manifest(path).to_dict()}
    )
    for record in fresh.attacks:
        record.status = "pending"
        record.reject_reason = None
    replayed = replay_audit(fresh, store.audit_path)
    current = load_manifest(path)
    assert [(a.attack_id, a.status, a.reject_reason) for a in replayed.attacks] == [
        (a.attack_id, a.status, a.reject_reason) for a in current.attacks
    ]


def test_image_endpoint_serves_real_files(desk_manifests):
    (train, _), root = desk_manifests
    manifest_path = root / "out" / "train_manifest.json"
    store = ReviewStore(manifest_path)
    api = TestClient(create_app(store))
    attack = train.attacks[0]
    response = api.get(f"/image/{attack.attack_id}")
    assert response.status_code == 200
    assert response.headers["content-type"] == "image/png"
    assert response.content[:8] == b"\x89PNG\r\n\x1a\n"
    source = api.get(f"/image/{attack.key_id}")
    assert source.status_code == 200
    missing = api.get("/image/not_a_real_id")
    assert missing.status_code == 404


def test_store_submit_without_http(manifest_25):
    store = ReviewStore(manifest_25)
    target = store.manifest.attacks[0].attack_id
    result = store.submit(ReviewDecision(target, "accepted", reviewer="tester"))
    assert result["status"] == "accepted" and result["changed"] is True
    event = json.loads(Path(store.audit_path).read_text().splitlines()[0])
    assert event["reviewer"] == "tester"
    assert event["timestamp"] > 0
