"""Single-writer review store: manifest mutations serialize through one lock,
each accepted decision is persisted atomically and appended to an audit log."""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from ..errors import InvalidTransition, UnknownAttackId
from ..pipeline.manifest import (
    ALL_STATUSES,
    DatasetManifest,
    load_manifest,
    save_manifest,
)


@dataclass(frozen=True)
class ReviewDecision:
    attack_id: str
    verdict: str  # accepted | rejected
    reason: str | None = None
    reviewer: str = "anonymous"
    timestamp: float = 0.0

    def to_dict(self) -> dict:
        return {
            "attack_id": self.attack_id,
            "verdict": self.verdict,
            "reason": self.reason,
            "reviewer": self.reviewer,
            "timestamp": self.timestamp,
        }


class ReviewStore:
    """Owns the manifest file for the duration of a review session."""

    def __init__(self, manifest_path: str | Path, audit_path: str | Path | None = None):
        self.manifest_path = Path(manifest_path)
        self.audit_path = (
            Path(audit_path)
            if audit_path is not None
            else self.manifest_path.with_suffix(".audit.jsonl")
        )
        self._lock = threading.Lock()
        self.manifest: DatasetManifest = load_manifest(self.manifest_path)

    def candidates(self, status: str | None = None) -> list[dict]:
        with self._lock:
            records = self.manifest.attacks
            if status is not None:
                if status not in ALL_STATUSES:
                    raise ValueError(f"unknown status filter {status!r}")
                records = [r for r in records if r.status == status]
            pair_warp = {(p.key_id, p.partner_id): p.warp for p in self.manifest.pairs}
            return [
                {
                    "attack_id": r.attack_id,
                    "key_id": r.key_id,
                    "partner_id": r.partner_id,
                    "status": r.status,
                    "reject_reason": r.reject_reason,
                    "warp": pair_warp[(r.key_id, r.partner_id)],
                    "auto": r.auto,
                }
                for r in records
            ]

    def image_path(self, image_id: str) -> Path:
        """Resolve an attack id or a source image id to a readable file."""
        with self._lock:
            for record in self.manifest.attacks:
                if record.attack_id == image_id and record.image:
                    return Path(record.image)
            from ..pipeline.runner import find_image

            try:
                return find_image(self.manifest.images_dir, image_id)
            except FileNotFoundError as exc:
                raise UnknownAttackId(image_id) from exc

    def submit(self, decision: ReviewDecision) -> dict:
        """Apply a verdict; idempotent repeats change (and log) nothing."""
        if decision.verdict not in ("accepted", "rejected"):
            raise InvalidTransition(f"verdict must be accepted or rejected, got {decision.verdict!r}")
        with self._lock:
            changed = self.manifest.apply_decision(
                decision.attack_id, decision.verdict, decision.reason
            )
            if changed:
                save_manifest(self.manifest_path, self.manifest)
                stamped = ReviewDecision(
                    attack_id=decision.attack_id,
                    verdict=decision.verdict,
                    reason=decision.reason,
                    reviewer=decision.reviewer,
                    timestamp=decision.timestamp or time.time(),
                )
                with open(self.audit_path, "a") as fh:
                    fh.write(json.dumps(stamped.to_dict(), sort_keys=True) + "\n")
            record = self.manifest.attack(decision.attack_id)
            return {
                "attack_id": record.attack_id,
                "status": record.status,
                "reject_reason": record.reject_reason,
                "changed": changed,
            }

    def summary(self) -> dict:
        with self._lock:
            counts = self.manifest.status_counts()
            return {
                "split": self.manifest.split,
                "counts": counts,
                "total": len(self.manifest.attacks),
            }


def replay_audit(manifest: DatasetManifest, audit_path: str | Path) -> DatasetManifest:
    """Re-apply an audit log to a fresh manifest; the result must equal the
    reviewed manifest state (event-sourcing consistency check)."""
    path = Path(audit_path)
    if path.exists():
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            manifest.apply_decision(event["attack_id"], event["verdict"], event.get("reason"))
    return manifest
