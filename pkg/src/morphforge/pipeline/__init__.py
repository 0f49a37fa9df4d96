"""Dataset construction pipeline: quality filtering, pairing, batch
morphing, artifact rejection, manifests."""

from .artifacts import ArtifactCheck, auto_reject_artifacts, mouth_box
from .config import PipelineConfig, load_config
from .manifest import (
    ALL_STATUSES,
    STATUS_ACCEPTED,
    STATUS_AUTO_REJECTED,
    STATUS_PENDING,
    STATUS_REJECTED,
    AttackRecord,
    DatasetManifest,
    load_manifest,
    save_manifest,
)
from .pairing import MorphPair, select_pairs, split_bf_attack
from .quality import QualityRecord, filter_by_quality, load_quality_csv
from .runner import run_pipeline, run_split

__all__ = [
    "ALL_STATUSES",
    "STATUS_ACCEPTED",
    "STATUS_AUTO_REJECTED",
    "STATUS_PENDING",
    "STATUS_REJECTED",
    "ArtifactCheck",
    "AttackRecord",
    "DatasetManifest",
    "MorphPair",
    "PipelineConfig",
    "QualityRecord",
    "auto_reject_artifacts",
    "filter_by_quality",
    "load_config",
    "load_manifest",
    "load_quality_csv",
    "mouth_box",
    "run_pipeline",
    "run_split",
    "save_manifest",
    "select_pairs",
    "split_bf_attack",
]
