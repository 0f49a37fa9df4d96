"""Procedural face images with canonical 68-point landmarks.

Desk-scale stand-in for the synthetic-face + landmark-detector inputs the
pipeline normally ingests: parametric cartoon faces with enough
high-frequency texture that morphing (which low-pass filters through
bilinear resampling) is statistically detectable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .image import luma, save_image
from .landmarks import LandmarkSet, save_landmarks


@dataclass(frozen=True)
class FaceParams:
    center: tuple[float, float]
    half_width: float
    half_height: float
    skin: tuple[int, int, int]
    eye_dx: float
    eye_y: float
    eye_rx: float
    eye_ry: float
    iris: tuple[int, int, int]
    mouth_y: float
    mouth_rx: float
    mouth_ry: float
    lip: tuple[int, int, int]
    brow_lift: float
    nose_len: float
    background: int
    texture_seed: int
    texture_gain: float


def sample_face_params(rng: np.random.Generator, size: int) -> FaceParams:
    cx = size / 2 + rng.uniform(-0.03, 0.03) * size
    cy = size / 2 + rng.uniform(-0.02, 0.04) * size
    return FaceParams(
        center=(cx, cy),
        half_width=rng.uniform(0.30, 0.38) * size,
        half_height=rng.uniform(0.36, 0.44) * size,
        skin=(
            int(rng.integers(170, 230)),
            int(rng.integers(130, 190)),
            int(rng.integers(100, 160)),
        ),
        eye_dx=rng.uniform(0.13, 0.17) * size,
        eye_y=cy - rng.uniform(0.08, 0.13) * size,
        eye_rx=rng.uniform(0.045, 0.065) * size,
        eye_ry=rng.uniform(0.025, 0.04) * size,
        iris=(int(rng.integers(30, 110)), int(rng.integers(40, 110)), int(rng.integers(60, 140))),
        mouth_y=cy + rng.uniform(0.16, 0.22) * size,
        mouth_rx=rng.uniform(0.08, 0.13) * size,
        mouth_ry=rng.uniform(0.028, 0.05) * size,
        lip=(int(rng.integers(130, 180)), int(rng.integers(40, 80)), int(rng.integers(50, 90))),
        brow_lift=rng.uniform(0.035, 0.06) * size,
        nose_len=rng.uniform(0.10, 0.15) * size,
        background=int(rng.integers(60, 180)),
        texture_seed=int(rng.integers(0, 2**31)),
        texture_gain=rng.uniform(4.0, 9.0),
    )


def _ellipse_mask(shape, cx, cy, rx, ry):
    yy, xx = np.mgrid[0 : shape[0], 0 : shape[1]]
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1.0


def render_face(params: FaceParams, size: int) -> np.ndarray:
    img = np.full((size, size, 3), params.background, dtype=np.float64)
    grad = np.linspace(-18, 18, size)[:, None, None]
    img = img + grad

    cx, cy = params.center
    face = _ellipse_mask((size, size), cx, cy, params.half_width, params.half_height)
    img[face] = params.skin

    for side in (-1, 1):
        ex = cx + side * params.eye_dx
        sclera = _ellipse_mask((size, size), ex, params.eye_y, params.eye_rx, params.eye_ry)
        img[sclera] = (245, 245, 245)
        iris = _ellipse_mask((size, size), ex, params.eye_y, params.eye_rx * 0.45, params.eye_ry * 0.85)
        img[iris] = params.iris
        pupil = _ellipse_mask((size, size), ex, params.eye_y, params.eye_rx * 0.18, params.eye_ry * 0.4)
        img[pupil] = (15, 15, 15)
        brow_y = params.eye_y - params.eye_ry - params.brow_lift
        brow = _ellipse_mask((size, size), ex, brow_y, params.eye_rx * 1.3, params.eye_ry * 0.45)
        img[brow] = (60, 45, 35)

    nose_top = (cx, params.eye_y + params.eye_ry * 1.5)
    nose = _ellipse_mask(
        (size, size), cx, nose_top[1] + params.nose_len / 2, params.eye_rx * 0.35, params.nose_len / 2
    )
    img[nose] = tuple(int(v * 0.85) for v in params.skin)

    mouth = _ellipse_mask((size, size), cx, params.mouth_y, params.mouth_rx, params.mouth_ry)
    img[mouth] = params.lip
    inner = _ellipse_mask((size, size), cx, params.mouth_y, params.mouth_rx * 0.6, params.mouth_ry * 0.45)
    img[inner] = tuple(int(v * 0.7) for v in params.lip)

    tex_rng = np.random.default_rng(params.texture_seed)
    img = img + tex_rng.normal(0.0, params.texture_gain, img.shape)
    return np.clip(np.floor(img + 0.5), 0, 255).astype(np.uint8)


def face_landmarks(params: FaceParams, size: int) -> LandmarkSet:
    cx, cy = params.center
    pts: list[tuple[float, float]] = []
    # 0-16 jaw along the lower face ellipse, left ear to right ear
    for i in range(17):
        t = np.pi * (1.0 - i / 16.0)
        pts.append((cx + params.half_width * np.cos(t) * 0.97, cy + params.half_height * np.sin(t) * 0.97))
    # 17-26 brows, five points per side
    for side in (-1, 1):
        ex = cx + side * params.eye_dx
        brow_y = params.eye_y - params.eye_ry - params.brow_lift
        offsets = np.linspace(-1.2, 1.2, 5) * params.eye_rx
        for off in offsets:
            arch = 0.25 * params.eye_ry * (1 - (off / (1.2 * params.eye_rx)) ** 2)
            pts.append((ex + off, brow_y - arch))
    # 27-30 nose bridge, 31-35 nose base
    bridge_top = params.eye_y + params.eye_ry * 1.2
    bridge_bot = bridge_top + params.nose_len
    for i in range(4):
        f = i / 3.0
        pts.append((cx, bridge_top + f * (bridge_bot - bridge_top)))
    base_y = bridge_bot + params.eye_ry * 0.4
    for off in np.linspace(-0.8, 0.8, 5) * params.eye_rx:
        pts.append((cx + off, base_y - 0.2 * abs(off)))
    # 36-47 eye hexagons
    for side in (-1, 1):
        ex = cx + side * params.eye_dx
        rx, ry = params.eye_rx, params.eye_ry
        hexagon = [
            (ex - rx, params.eye_y),
            (ex - 0.4 * rx, params.eye_y - ry),
            (ex + 0.4 * rx, params.eye_y - ry),
            (ex + rx, params.eye_y),
            (ex + 0.4 * rx, params.eye_y + ry),
            (ex - 0.4 * rx, params.eye_y + ry),
        ]
        pts.extend(hexagon)
    # 48-59 outer lip (12 points around the mouth ellipse, from left corner)
    for i in range(12):
        t = np.pi - 2 * np.pi * i / 12.0
        pts.append((cx + params.mouth_rx * np.cos(t), params.mouth_y + params.mouth_ry * np.sin(t)))
    # 60-67 inner lip (8 points)
    for i in range(8):
        t = np.pi - 2 * np.pi * i / 8.0
        pts.append(
            (cx + 0.6 * params.mouth_rx * np.cos(t), params.mouth_y + 0.45 * params.mouth_ry * np.sin(t))
        )
    arr = np.clip(np.array(pts), 0.0, size - 1.0)
    return LandmarkSet(arr, size, size)


def make_face(seed: int, size: int = 96) -> tuple[np.ndarray, LandmarkSet]:
    """One deterministic face image + landmark set."""
    rng = np.random.default_rng(seed)
    params = sample_face_params(rng, size)
    return render_face(params, size), face_landmarks(params, size)


def sharpness_score(image: np.ndarray) -> float:
    """Variance of the 4-neighbor Laplacian; the quality proxy the synthetic
    corpus records in quality.csv."""
    gray = luma(image)
    padded = np.pad(gray, 1, mode="edge")
    lap = (
        padded[:-2, 1:-1] + padded[2:, 1:-1] + padded[1:-1, :-2] + padded[1:-1, 2:]
        - 4.0 * padded[1:-1, 1:-1]
    )
    return float(lap.var())


def generate_corpus(
    out_dir: str | Path, count: int, seed: int, prefix: str = "face", size: int = 96
) -> list[str]:
    """Write images/, landmarks/ and quality.csv for `count` synthetic ids."""
    out = Path(out_dir)
    images = out / "images"
    landmarks = out / "landmarks"
    images.mkdir(parents=True, exist_ok=True)
    landmarks.mkdir(parents=True, exist_ok=True)
    ids = []
    rows = []
    for i in range(count):
        image_id = f"{prefix}_{i:05d}"
        image, lm = make_face(seed * 1_000_003 + i, size)
        save_image(images / f"{image_id}.png", image)
        save_landmarks(landmarks / f"{image_id}.json", lm, image_name=f"{image_id}.png")
        rows.append((image_id, sharpness_score(image)))
        ids.append(image_id)
    with open(out / "quality.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image_id", "quality"])
        for image_id, quality in rows:
            writer.writerow([image_id, f"{quality:.6f}"])
    return ids
