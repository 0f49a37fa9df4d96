"""Assemble detector train/eval matrices from a dataset manifest."""

from __future__ import annotations

import logging

import numpy as np

from ..image import crop_extended, load_image
from ..landmarks import LandmarkSet, load_landmarks
from ..pipeline.manifest import STATUS_ACCEPTED, STATUS_PENDING, DatasetManifest
from ..pipeline.runner import find_image, find_landmarks
from .features import extract_features

log = logging.getLogger("morphforge.baseline")

TRAINABLE_STATUSES = (STATUS_PENDING, STATUS_ACCEPTED)


def landmark_bbox(landmarks: LandmarkSet) -> tuple[float, float, float, float]:
    """Face box (x, y, w, h) from the landmark extent; stands in for detector
    boxes, which are pipeline inputs when available."""
    xmin, ymin = landmarks.points.min(axis=0)
    xmax, ymax = landmarks.points.max(axis=0)
    return float(xmin), float(ymin), float(xmax - xmin), float(ymax - ymin)


def crop_for_detector(image: np.ndarray, landmarks: LandmarkSet, size: int = 224) -> np.ndarray:
    return crop_extended(image, landmark_bbox(landmarks), size)


def build_dataset(
    manifest: DatasetManifest,
    attack_statuses: tuple[str, ...] = TRAINABLE_STATUSES,
) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Feature matrix, binary labels (1 = attack) and sample ids.

    Bona fide samples come from the manifest's source directories; attacks
    from the morph outputs, restricted to the given statuses.
    """
    rows: list[np.ndarray] = []
    labels: list[int] = []
    ids: list[str] = []
    for image_id in manifest.bonafide:
        image = load_image(find_image(manifest.images_dir, image_id))
        landmarks = load_landmarks(find_landmarks(manifest.landmarks_dir, image_id))
        rows.append(extract_features(crop_for_detector(image, landmarks)))
        labels.append(0)
        ids.append(image_id)
    for record in manifest.attacks:
        if record.status not in attack_statuses:
            continue
        image = load_image(record.image)
        landmarks = load_landmarks(record.landmarks)
        rows.append(extract_features(crop_for_detector(image, landmarks)))
        labels.append(1)
        ids.append(record.attack_id)
    log.info(
        "built dataset: %d bona fide, %d attacks", labels.count(0), labels.count(1)
    )
    return np.array(rows), np.array(labels), ids
