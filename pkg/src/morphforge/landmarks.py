"""Facial landmark sets: container, interpolation, file formats.

The canonical layout is the 68-point scheme (0-16 jaw, 17-26 brows, 27-35
nose, 36-47 eyes, 48-67 mouth); other counts are accepted wherever no
named subset is required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LandmarkCountMismatch
from .geometry import as_points

MOUTH_RANGE = range(48, 68)


@dataclass(frozen=True)
class LandmarkSet:
    """Ordered 2-D landmark points for one image."""

    points: np.ndarray
    width: int
    height: int

    def __post_init__(self):
        pts = as_points(self.points)
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"invalid image size {self.width}x{self.height}")
        if len(pts) and (
            pts[:, 0].min() < 0
            or pts[:, 1].min() < 0
            or pts[:, 0].max() >= self.width
            or pts[:, 1].max() >= self.height
        ):
            raise ValueError("landmarks fall outside the image bounds")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def interpolate_landmarks(a: LandmarkSet, b: LandmarkSet, w: float) -> LandmarkSet:
    """Pointwise linear interpolation: (1-w)*a + w*b."""
    if len(a) != len(b):
        raise LandmarkCountMismatch(f"{len(a)} points vs {len(b)} points")
    if (a.width, a.height) != (b.width, b.height):
        raise LandmarkCountMismatch(
            f"image sizes differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    if w == 0.0:
        return a
    if w == 1.0:
        return b
    pts = (1.0 - w) * a.points + w * b.points
    return LandmarkSet(pts, a.width, a.height)


def boundary_points(width: int, height: int) -> np.ndarray:
    """Four frame corners plus four edge midpoints, in pixel-center coords."""
    x1 = float(width - 1)
    y1 = float(height - 1)
    return np.array(
        [
            [0.0, 0.0],
            [x1, 0.0],
            [x1, y1],
            [0.0, y1],
            [x1 / 2.0, 0.0],
            [x1, y1 / 2.0],
            [x1 / 2.0, y1],
            [0.0, y1 / 2.0],
        ]
    )


def load_landmarks(path: str | Path, width: int | None = None, height: int | None = None) -> LandmarkSet:
    """Read a landmark file.

    JSON files carry their own dimensions:
        {"image": name, "width": w, "height": h, "points": [[x, y], ...]}
    Plain-text files hold one whitespace-separated "x y" pair per line (the
    common 68-point export); width/height must then be passed in.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        data = json.loads(text)
        return LandmarkSet(
            np.array(data["points"], dtype=np.float64).reshape(-1, 2),
            int(data["width"]),
            int(data["height"]),
        )
    rows = [line.split() for line in text.splitlines() if line.strip()]
    pts = np.array([[float(r[0]), float(r[1])] for r in rows])
    if width is None or height is None:
        raise ValueError(f"{path}: plain-text landmark files need explicit width/height")
    return LandmarkSet(pts, width, height)


def save_landmarks(path: str | Path, landmarks: LandmarkSet, image_name: str = "") -> None:
    payload = {
        "image": image_name,
        "width": landmarks.width,
        "height": landmarks.height,
        "points": [[float(x), float(y)] for x, y in landmarks.points],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True))
