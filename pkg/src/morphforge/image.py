"""8-bit image helpers: IO, luma, bilinear resize, extended crops.

Images are numpy uint8 arrays, (H, W) grayscale or (H, W, 3) RGB.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image as PILImage

from .errors import EmptyIntersection

CROP_EXTENSION = 0.05  # grow bbox by 5% of width and height (2.5% per side)
CROP_SIZE = 224


def load_image(path: str | Path) -> np.ndarray:
    with PILImage.open(path) as img:
        if img.mode in ("L", "I;16"):
            return np.asarray(img.convert("L"), dtype=np.uint8)
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def save_image(path: str | Path, image: np.ndarray) -> None:
    arr = np.asarray(image)
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 image, got {arr.dtype}")
    PILImage.fromarray(arr).save(path, format="PNG")


def luma(image: np.ndarray) -> np.ndarray:
    """Rec.601 luma in float64; grayscale passes through."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 2:
        return arr
    return 0.299 * arr[:, :, 0] + 0.587 * arr[:, :, 1] + 0.114 * arr[:, :, 2]


def quantize(values: np.ndarray) -> np.ndarray:
    """Round half away from zero and clip into the 8-bit range."""
    return np.clip(np.floor(np.asarray(values, dtype=np.float64) + 0.5), 0.0, 255.0).astype(
        np.uint8
    )


def resize_bilinear(image: np.ndarray, out_height: int, out_width: int) -> np.ndarray:
    """Bilinear resize with half-pixel-centered sampling, clamped at edges."""
    arr = np.asarray(image)
    squeeze = arr.ndim == 2
    img = (arr[:, :, None] if squeeze else arr).astype(np.float64)
    in_h, in_w = img.shape[:2]
    sy = (np.arange(out_height, dtype=np.float64) + 0.5) * (in_h / out_height) - 0.5
    sx = (np.arange(out_width, dtype=np.float64) + 0.5) * (in_w / out_width) - 0.5
    y0 = np.floor(sy)
    x0 = np.floor(sx)
    wy = (sy - y0)[:, None, None]
    wx = (sx - x0)[None, :, None]
    y0i = np.clip(y0.astype(np.int64), 0, in_h - 1)
    y1i = np.clip(y0.astype(np.int64) + 1, 0, in_h - 1)
    x0i = np.clip(x0.astype(np.int64), 0, in_w - 1)
    x1i = np.clip(x0.astype(np.int64) + 1, 0, in_w - 1)
    top = (1.0 - wx) * img[y0i][:, x0i] + wx * img[y0i][:, x1i]
    bot = (1.0 - wx) * img[y1i][:, x0i] + wx * img[y1i][:, x1i]
    out = quantize((1.0 - wy) * top + wy * bot)
    return out[:, :, 0] if squeeze else out


def extended_bbox(
    bbox: tuple[float, float, float, float], width: int, height: int
) -> tuple[int, int, int, int]:
    """Grow an (x, y, w, h) box by CROP_EXTENSION of each dimension (half per
    side) and clamp to the image; returns integer (x0, y0, x1, y1), exclusive
    upper bounds."""
    x, y, w, h = bbox
    if w <= 0 or h <= 0:
        raise ValueError(f"invalid bbox {bbox}")
    pad_x = 0.5 * CROP_EXTENSION * w
    pad_y = 0.5 * CROP_EXTENSION * h
    x0 = int(np.floor(x - pad_x))
    y0 = int(np.floor(y - pad_y))
    x1 = int(np.ceil(x + w + pad_x))
    y1 = int(np.ceil(y + h + pad_y))
    x0, x1 = max(x0, 0), min(x1, width)
    y0, y1 = max(y0, 0), min(y1, height)
    if x0 >= x1 or y0 >= y1:
        raise EmptyIntersection(f"bbox {bbox} does not intersect a {width}x{height} image")
    return x0, y0, x1, y1


def crop_extended(image: np.ndarray, bbox: tuple[float, float, float, float], size: int = CROP_SIZE) -> np.ndarray:
    """Crop a face box grown by the 5% rule, then resize to size x size."""
    arr = np.asarray(image)
    h, w = arr.shape[:2]
    x0, y0, x1, y1 = extended_bbox(bbox, w, h)
    crop = arr[y0:y1, x0:x1]
    return resize_bilinear(crop, size, size)
