"""Automatic rejection of landmark-morphing artifacts (dark mouth regions)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import MissingMouthLandmarks
from ..image import luma
from ..landmarks import MOUTH_RANGE, LandmarkSet

LUMA_BLACK = 30.0  # 8-bit luma below this counts as black
BLACK_FRACTION = 0.10  # reject when the black fraction strictly exceeds this
MOUTH_DILATION = 0.10  # grow the mouth box by this fraction per side


@dataclass(frozen=True)
class ArtifactCheck:
    passed: bool
    black_fraction: float
    box: tuple[int, int, int, int]
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "black_fraction": self.black_fraction,
            "box": list(self.box),
            "reason": self.reason,
        }


def mouth_box(
    landmarks: LandmarkSet, dilation: float = MOUTH_DILATION
) -> tuple[int, int, int, int]:
    """Pixel bounds (x0, y0, x1, y1), exclusive upper, of the dilated mouth
    landmark bounding box clamped to the image."""
    if len(landmarks) < MOUTH_RANGE.stop:
        raise MissingMouthLandmarks(
            f"need the canonical 68-point layout (got {len(landmarks)} points)"
        )
    mouth = landmarks.points[MOUTH_RANGE.start : MOUTH_RANGE.stop]
    xmin, ymin = mouth.min(axis=0)
    xmax, ymax = mouth.max(axis=0)
    pad_x = dilation * (xmax - xmin)
    pad_y = dilation * (ymax - ymin)
    x0 = max(int(np.floor(xmin - pad_x)), 0)
    y0 = max(int(np.floor(ymin - pad_y)), 0)
    x1 = min(int(np.ceil(xmax + pad_x)) + 1, landmarks.width)
    y1 = min(int(np.ceil(ymax + pad_y)) + 1, landmarks.height)
    return x0, y0, x1, y1


def auto_reject_artifacts(
    image: np.ndarray,
    landmarks: LandmarkSet,
    luma_threshold: float = LUMA_BLACK,
    black_fraction: float = BLACK_FRACTION,
    dilation: float = MOUTH_DILATION,
) -> ArtifactCheck:
    """Reject a morph when too much of its mouth region is black.

    The mouth landmark bounding box, dilated per side, is scanned for pixels
    with luma below the threshold; the morph is rejected iff their fraction
    strictly exceeds the limit (equality passes).
    """
    x0, y0, x1, y1 = mouth_box(landmarks, dilation)
    region = luma(np.asarray(image)[y0:y1, x0:x1])
    if region.size == 0:
        return ArtifactCheck(True, 0.0, (x0, y0, x1, y1))
    fraction = float(np.count_nonzero(region < luma_threshold)) / region.size
    if fraction > black_fraction:
        return ArtifactCheck(
            False,
            fraction,
            (x0, y0, x1, y1),
            reason=f"black mouth region: {100 * fraction:.1f}% of box below luma {luma_threshold:g}",
        )
    return ArtifactCheck(True, fraction, (x0, y0, x1, y1))
