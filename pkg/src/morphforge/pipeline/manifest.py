"""Dataset manifests: provenance records with review state, persisted
atomically with consistency checks on every write."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InvalidTransition, ManifestConsistencyError, UnknownAttackId
from .pairing import MorphPair

SCHEMA_VERSION = 1

STATUS_PENDING = "pending"
STATUS_AUTO_REJECTED = "auto_rejected"
STATUS_ACCEPTED = "accepted"
STATUS_REJECTED = "rejected"
ALL_STATUSES = (STATUS_PENDING, STATUS_AUTO_REJECTED, STATUS_ACCEPTED, STATUS_REJECTED)
REVIEW_VERDICTS = (STATUS_ACCEPTED, STATUS_REJECTED)


@dataclass
class AttackRecord:
    attack_id: str
    key_id: str
    partner_id: str
    status: str = STATUS_PENDING
    reject_reason: str | None = None
    image: str | None = None
    landmarks: str | None = None
    auto: dict | None = None

    def to_dict(self) -> dict:
        return {
            "attack_id": self.attack_id,
            "key_id": self.key_id,
            "partner_id": self.partner_id,
            "status": self.status,
            "reject_reason": self.reject_reason,
            "image": self.image,
            "landmarks": self.landmarks,
            "auto": self.auto,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AttackRecord":
        return cls(
            attack_id=data["attack_id"],
            key_id=data["key_id"],
            partner_id=data["partner_id"],
            status=data["status"],
            reject_reason=data.get("reject_reason"),
            image=data.get("image"),
            landmarks=data.get("landmarks"),
            auto=data.get("auto"),
        )


@dataclass
class DatasetManifest:
    split: str
    seed: int
    bonafide: list[str] = field(default_factory=list)
    pool: list[str] = field(default_factory=list)
    pairs: list[MorphPair] = field(default_factory=list)
    attacks: list[AttackRecord] = field(default_factory=list)
    images_dir: str = ""
    landmarks_dir: str = ""

    def attack(self, attack_id: str) -> AttackRecord:
        for record in self.attacks:
            if record.attack_id == attack_id:
                return record
        raise UnknownAttackId(attack_id)

    def status_counts(self) -> dict[str, int]:
        counts = {status: 0 for status in ALL_STATUSES}
        for record in self.attacks:
            counts[record.status] += 1
        return counts

    def check_consistency(self) -> None:
        """Structural invariants; raises ManifestConsistencyError on violation."""
        if self.split not in ("train", "eval"):
            raise ManifestConsistencyError(f"unknown split {self.split!r}")
        bf = set(self.bonafide)
        pool = set(self.pool)
        if len(bf) != len(self.bonafide) or len(pool) != len(self.pool):
            raise ManifestConsistencyError("duplicate ids in bonafide or pool")
        overlap = bf & pool
        if overlap:
            raise ManifestConsistencyError(
                f"bonafide and morph pool overlap: {sorted(overlap)[:3]}..."
            )
        pair_keys = {(p.key_id, p.partner_id) for p in self.pairs}
        if len(pair_keys) != len(self.pairs):
            raise ManifestConsistencyError("duplicate morph pairs")
        for pair in self.pairs:
            if pair.key_id not in pool or pair.partner_id not in pool:
                raise ManifestConsistencyError(
                    f"pair {pair.key_id}/{pair.partner_id} references non-pool images"
                )
            if not 0.0 <= pair.warp <= 1.0:
                raise ManifestConsistencyError(f"pair warp out of range: {pair.warp}")
        if len(self.attacks) > len(self.pairs):
            raise ManifestConsistencyError("more attacks than pairs")
        seen_attacks = set()
        for record in self.attacks:
            if record.status not in ALL_STATUSES:
                raise ManifestConsistencyError(f"unknown status {record.status!r}")
            if (record.key_id, record.partner_id) not in pair_keys:
                raise ManifestConsistencyError(
                    f"attack {record.attack_id} references an unknown pair"
                )
            if record.attack_id in seen_attacks:
                raise ManifestConsistencyError(f"duplicate attack id {record.attack_id}")
            seen_attacks.add(record.attack_id)

    def apply_decision(self, attack_id: str, verdict: str, reason: str | None = None) -> bool:
        """pending -> accepted/rejected; idempotent repeats return False.

        Conflicting verdicts and verdicts on auto-rejected attacks raise
        InvalidTransition.
        """
        if verdict not in REVIEW_VERDICTS:
            raise InvalidTransition(f"verdict must be one of {REVIEW_VERDICTS}, got {verdict!r}")
        record = self.attack(attack_id)
        if record.status == verdict:
            return False
        if record.status != STATUS_PENDING:
            raise InvalidTransition(
                f"{attack_id} is {record.status}; cannot change to {verdict}"
            )
        record.status = verdict
        record.reject_reason = reason if verdict == STATUS_REJECTED else None
        return True

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "split": self.split,
            "seed": self.seed,
            "images_dir": self.images_dir,
            "landmarks_dir": self.landmarks_dir,
            "bonafide": list(self.bonafide),
            "pool": list(self.pool),
            "pairs": [
                {"key_id": p.key_id, "partner_id": p.partner_id, "warp": p.warp, "seed": p.seed}
                for p in self.pairs
            ],
            "attacks": [record.to_dict() for record in self.attacks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetManifest":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ManifestConsistencyError(
                f"unsupported manifest schema_version {data.get('schema_version')!r}"
            )
        return cls(
            split=data["split"],
            seed=int(data["seed"]),
            bonafide=list(data["bonafide"]),
            pool=list(data["pool"]),
            pairs=[
                MorphPair(p["key_id"], p["partner_id"], float(p["warp"]), int(p["seed"]))
                for p in data["pairs"]
            ],
            attacks=[AttackRecord.from_dict(a) for a in data["attacks"]],
            images_dir=data.get("images_dir", ""),
            landmarks_dir=data.get("landmarks_dir", ""),
        )


def save_manifest(path: str | Path, manifest: DatasetManifest) -> None:
    """Consistency-checked atomic write (temp file + rename)."""
    manifest.check_consistency()
    path = Path(path)
    payload = json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_manifest(path: str | Path) -> DatasetManifest:
    manifest = DatasetManifest.from_dict(json.loads(Path(path).read_text()))
    manifest.check_consistency()
    return manifest
