"""Pipeline configuration: flat keys from a TOML or JSON file."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import ConfigError


@dataclass(frozen=True)
class PipelineConfig:
    train_images: str
    train_landmarks: str
    train_quality: str
    eval_images: str
    eval_landmarks: str
    eval_quality: str
    out: str = "pipeline_out"
    seed: int = 0
    keep: int = 50
    n_keys: int = 5
    partners_per_key: int = 5
    blend: float = 0.5
    luma_threshold: float = 30.0
    black_fraction: float = 0.10
    mouth_dilation: float = 0.10
    boundary_points: bool = True
    workers: int = 4

    def __post_init__(self):
        if not 0.0 <= self.blend <= 1.0:
            raise ConfigError(f"blend must be in [0, 1], got {self.blend}")
        if self.keep <= 0 or self.n_keys <= 0 or self.partners_per_key <= 0:
            raise ConfigError("keep, n_keys, partners_per_key must be positive")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = json.loads(path.read_text())
    else:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    required = {
        "train_images",
        "train_landmarks",
        "train_quality",
        "eval_images",
        "eval_landmarks",
        "eval_quality",
    }
    missing = required - set(data)
    if missing:
        raise ConfigError(f"{path}: missing required keys {sorted(missing)}")
    # paths are resolved relative to the config file
    resolved = dict(data)
    for key in list(required) + ["out"]:
        if key in resolved:
            resolved[key] = str((path.parent / str(resolved[key])).resolve())
    try:
        return PipelineConfig(**resolved)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
