"""Full dataset construction: filter -> split -> pair -> morph -> auto-reject
-> manifest, mirrored over disjoint train and eval pools."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from ..errors import ManifestConsistencyError, PipelineError
from ..image import load_image, save_image
from ..landmarks import load_landmarks, save_landmarks
from ..morph import MorphParams, morph
from .artifacts import auto_reject_artifacts
from .config import PipelineConfig
from .manifest import (
    STATUS_AUTO_REJECTED,
    STATUS_PENDING,
    AttackRecord,
    DatasetManifest,
    save_manifest,
)
from .pairing import MorphPair, select_pairs, split_bf_attack
from .quality import filter_by_quality, load_quality_csv

log = logging.getLogger("morphforge.pipeline")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp")


def find_image(images_dir: str | Path, image_id: str) -> Path:
    base = Path(images_dir)
    for ext in IMAGE_EXTENSIONS:
        candidate = base / f"{image_id}{ext}"
        if candidate.exists():
            return candidate
    raise FileNotFoundError(f"no image file for id {image_id!r} under {base}")


def find_landmarks(landmarks_dir: str | Path, image_id: str) -> Path:
    base = Path(landmarks_dir)
    for ext in (".json", ".txt", ".pts"):
        candidate = base / f"{image_id}{ext}"
        if candidate.exists():
            return candidate
    raise FileNotFoundError(f"no landmark file for id {image_id!r} under {base}")


def morph_pair_files(
    pair: MorphPair,
    images_dir: str,
    landmarks_dir: str,
    out_dir: Path,
    blend: float,
    add_boundary: bool,
) -> AttackRecord:
    """Morph one pair and write its PNG plus morphed-landmark JSON."""
    img_a = load_image(find_image(images_dir, pair.key_id))
    img_b = load_image(find_image(images_dir, pair.partner_id))
    lm_a = load_landmarks(find_landmarks(landmarks_dir, pair.key_id))
    lm_b = load_landmarks(find_landmarks(landmarks_dir, pair.partner_id))
    params = MorphParams(blend=blend, warp=pair.warp, seed=pair.seed, add_boundary=add_boundary)
    image, target = morph(img_a, lm_a, img_b, lm_b, params)
    attack_id = pair.attack_id
    image_path = out_dir / f"{attack_id}.png"
    lm_path = out_dir / f"{attack_id}.json"
    save_image(image_path, image)
    save_landmarks(lm_path, target, image_name=f"{attack_id}.png")
    return AttackRecord(
        attack_id=attack_id,
        key_id=pair.key_id,
        partner_id=pair.partner_id,
        image=str(image_path),
        landmarks=str(lm_path),
    )


def run_split(
    split: str,
    images_dir: str,
    landmarks_dir: str,
    quality_csv: str,
    out_dir: Path,
    config: PipelineConfig,
) -> DatasetManifest:
    """Run the whole workflow for one split and return its manifest."""
    rng = np.random.default_rng([config.seed, 0 if split == "train" else 1])

    records = load_quality_csv(quality_csv)
    kept = filter_by_quality(records, config.keep)
    log.info("%s: kept %d of %d ids by quality", split, len(kept), len(records))

    bonafide, pool = split_bf_attack(kept, rng)
    pairs = select_pairs(pool, config.n_keys, config.partners_per_key, rng, config.seed)
    log.info("%s: %d bona fide, %d pool, %d pairs", split, len(bonafide), len(pool), len(pairs))

    attacks_dir = out_dir / split / "attacks"
    attacks_dir.mkdir(parents=True, exist_ok=True)

    failures: list[tuple[str, str]] = []
    results: list[AttackRecord | None] = [None] * len(pairs)

    def work(index: int, pair: MorphPair):
        try:
            results[index] = morph_pair_files(
                pair, images_dir, landmarks_dir, attacks_dir, config.blend, config.boundary_points
            )
        except Exception as exc:  # collected and re-raised with ids
            failures.append((pair.attack_id, str(exc)))

    with ThreadPoolExecutor(max_workers=config.workers) as pool_exec:
        futures = [pool_exec.submit(work, i, pair) for i, pair in enumerate(pairs)]
        for future in futures:
            future.result()
    if failures:
        raise PipelineError("morph", sorted(failures))

    attacks: list[AttackRecord] = [r for r in results if r is not None]
    for record in attacks:
        morph_lm = load_landmarks(record.landmarks)
        morph_img = load_image(record.image)
        check = auto_reject_artifacts(
            morph_img,
            morph_lm,
            luma_threshold=config.luma_threshold,
            black_fraction=config.black_fraction,
            dilation=config.mouth_dilation,
        )
        record.auto = check.to_dict()
        if check.passed:
            record.status = STATUS_PENDING
        else:
            record.status = STATUS_AUTO_REJECTED
            record.reject_reason = check.reason
    log.info(
        "%s: %d attacks pending review, %d auto-rejected",
        split,
        sum(1 for a in attacks if a.status == STATUS_PENDING),
        sum(1 for a in attacks if a.status == STATUS_AUTO_REJECTED),
    )

    manifest = DatasetManifest(
        split=split,
        seed=config.seed,
        bonafide=bonafide,
        pool=pool,
        pairs=pairs,
        attacks=attacks,
        images_dir=str(images_dir),
        landmarks_dir=str(landmarks_dir),
    )
    if len(manifest.attacks) != len(manifest.pairs):
        raise ManifestConsistencyError(
            f"{split}: {len(manifest.attacks)} attacks for {len(manifest.pairs)} pairs"
        )
    return manifest


def run_pipeline(config: PipelineConfig) -> tuple[DatasetManifest, DatasetManifest]:
    """Execute both splits and persist their manifests.

    The two raw pools must be id-disjoint; manifests are written only after
    both splits complete, so a failed run leaves no partial manifest.
    """
    train_ids = {r.image_id for r in load_quality_csv(config.train_quality)}
    eval_ids = {r.image_id for r in load_quality_csv(config.eval_quality)}
    shared = train_ids & eval_ids
    if shared:
        raise ManifestConsistencyError(
            f"train and eval pools share image ids: {sorted(shared)[:3]}..."
        )

    out_dir = Path(config.out)
    train = run_split(
        "train", config.train_images, config.train_landmarks, config.train_quality, out_dir, config
    )
    eval_manifest = run_split(
        "eval", config.eval_images, config.eval_landmarks, config.eval_quality, out_dir, config
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    save_manifest(out_dir / "train_manifest.json", train)
    save_manifest(out_dir / "eval_manifest.json", eval_manifest)
    return train, eval_manifest
