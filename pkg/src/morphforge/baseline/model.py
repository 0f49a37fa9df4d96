"""Linear detector with a binary head and a pixel-wise map head."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch
from .features import FEATURE_GRID, feature_config_hash
from .losses import sigmoid

MAP_GRID = (14, 14)  # pixel-wise supervision resolution


@dataclass
class LinearModel:
    weights: np.ndarray  # (d,)
    bias: float
    map_head: np.ndarray  # (cells, d)
    feature_mean: np.ndarray  # (d,) standardization applied before projection
    feature_std: np.ndarray  # (d,)
    map_grid: tuple[int, int] = MAP_GRID
    binary_head: str = "sigmoid"  # "softmax" scores via the 2-way softmax on
    # (z, 0), which equals sigmoid(z) exactly
    feature_hash: str = field(default_factory=feature_config_hash)

    @property
    def dim(self) -> int:
        return self.weights.shape[0]

    def standardize(self, features: np.ndarray) -> np.ndarray:
        x = np.asarray(features, dtype=np.float64)
        if x.shape[-1] != self.dim:
            raise DimensionMismatch(f"feature dim {x.shape[-1]}, model expects {self.dim}")
        return (x - self.feature_mean) / self.feature_std

    def logit(self, features: np.ndarray) -> np.ndarray:
        return self.standardize(features) @ self.weights + self.bias

    def score(self, features: np.ndarray):
        """Attack-likeness in (0, 1) for one feature vector or a batch."""
        z = self.logit(features)
        if self.binary_head == "softmax":
            stacked = np.stack([z, np.zeros_like(z)], axis=-1)
            shifted = np.exp(stacked - stacked.max(axis=-1, keepdims=True))
            probs = shifted / shifted.sum(axis=-1, keepdims=True)
            out = probs[..., 0]
        else:
            out = sigmoid(z)
        return float(out) if np.ndim(features) == 1 else out

    def map_probabilities(self, features: np.ndarray) -> np.ndarray:
        return sigmoid(self.standardize(features) @ self.map_head.T)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "map_head": self.map_head.tolist(),
            "feature_mean": self.feature_mean.tolist(),
            "feature_std": self.feature_std.tolist(),
            "map_grid": list(self.map_grid),
            "binary_head": self.binary_head,
            "feature_hash": self.feature_hash,
            "feature_grid": FEATURE_GRID,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearModel":
        return cls(
            weights=np.array(data["weights"], dtype=np.float64),
            bias=float(data["bias"]),
            map_head=np.array(data["map_head"], dtype=np.float64),
            feature_mean=np.array(data["feature_mean"], dtype=np.float64),
            feature_std=np.array(data["feature_std"], dtype=np.float64),
            map_grid=tuple(data["map_grid"]),
            binary_head=data["binary_head"],
            feature_hash=data["feature_hash"],
        )


def save_model(path: str | Path, model: LinearModel) -> None:
    Path(path).write_text(json.dumps(model.to_dict(), sort_keys=True))


def load_model(path: str | Path) -> LinearModel:
    data = json.loads(Path(path).read_text())
    if data.get("schema_version") != 1:
        raise ValueError(f"unsupported model schema_version {data.get('schema_version')!r}")
    model = LinearModel.from_dict(data)
    if model.feature_hash != feature_config_hash():
        raise ValueError(
            "model was trained with a different feature configuration "
            f"({model.feature_hash} != {feature_config_hash()})"
        )
    return model


def score(model: LinearModel, features: np.ndarray) -> float:
    """Score one feature vector; convenience wrapper around model.score."""
    return float(model.score(np.asarray(features, dtype=np.float64)))
