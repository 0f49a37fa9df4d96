"""Quality-score ingestion and top-k filtering."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from ..errors import KeepExceedsInput


@dataclass(frozen=True)
class QualityRecord:
    image_id: str
    quality: float


def load_quality_csv(path: str | Path) -> list[QualityRecord]:
    """Read `image_id,quality` rows; duplicate ids and non-finite scores are
    corrupt inputs and raise."""
    path = Path(path)
    records: list[QualityRecord] = []
    seen: set[str] = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != [
            "image_id",
            "quality",
        ]:
            raise ValueError(f"{path}: header must be image_id,quality")
        for row in reader:
            image_id = row["image_id"].strip()
            quality = float(row["quality"])
            if not math.isfinite(quality):
                raise ValueError(f"{path}: non-finite quality for {image_id!r}")
            if image_id in seen:
                raise ValueError(f"{path}: duplicate image_id {image_id!r}")
            seen.add(image_id)
            records.append(QualityRecord(image_id, quality))
    return records


def filter_by_quality(records: list[QualityRecord], keep: int) -> list[str]:
    """The `keep` highest-quality image ids, descending quality, ties broken
    by lexicographic id."""
    if keep > len(records):
        raise KeepExceedsInput(f"asked to keep {keep} of {len(records)} records")
    if keep < 0:
        raise ValueError(f"keep must be non-negative, got {keep}")
    ranked = sorted(records, key=lambda r: (-r.quality, r.image_id))
    return [r.image_id for r in ranked[:keep]]
