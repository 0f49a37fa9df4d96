"""Command-line entry points for every pipeline stage.

Verbosity comes from the MORPHFORGE_LOG environment variable (DEBUG, INFO,
WARNING, ...; default WARNING). All subcommands exit 0 on success, 1 on
operational errors (message on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import MorphforgeError


def _setup_logging() -> None:
    level = os.environ.get("MORPHFORGE_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def _cmd_filter(args) -> int:
    from .pipeline import filter_by_quality, load_quality_csv

    records = load_quality_csv(args.quality)
    kept = filter_by_quality(records, args.keep)
    Path(args.out).write_text("\n".join(kept) + "\n")
    print(f"kept {len(kept)} of {len(records)} ids -> {args.out}")
    return 0


def _cmd_split(args) -> int:
    from .pipeline import split_bf_attack

    ids = [line.strip() for line in Path(args.ids).read_text().splitlines() if line.strip()]
    rng = np.random.default_rng(args.seed)
    bonafide, pool = split_bf_attack(ids, rng)
    Path(args.out_bf).write_text("\n".join(bonafide) + "\n")
    Path(args.out_pool).write_text("\n".join(pool) + "\n")
    print(f"split {len(ids)} ids into {len(bonafide)} bona fide + {len(pool)} pool")
    return 0


def _cmd_pair(args) -> int:
    from .pipeline import select_pairs

    pool = [line.strip() for line in Path(args.pool).read_text().splitlines() if line.strip()]
    rng = np.random.default_rng(args.seed)
    pairs = select_pairs(pool, args.n_keys, args.partners, rng, args.seed)
    payload = [
        {"key_id": p.key_id, "partner_id": p.partner_id, "warp": p.warp, "seed": p.seed}
        for p in pairs
    ]
    Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"selected {len(pairs)} pairs -> {args.out}")
    return 0


def _cmd_morph(args) -> int:
    from .pipeline.pairing import MorphPair
    from .pipeline.runner import morph_pair_files

    pairs_data = json.loads(Path(args.pairs).read_text())
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for item in pairs_data:
        pair = MorphPair(item["key_id"], item["partner_id"], float(item["warp"]), int(item["seed"]))
        record = morph_pair_files(
            pair, args.images, args.landmarks, out_dir, args.blend, not args.no_boundary
        )
        print(f"morphed {record.attack_id}")
    return 0


def _cmd_inspect(args) -> int:
    from .image import load_image
    from .landmarks import load_landmarks
    from .pipeline import (
        STATUS_AUTO_REJECTED,
        STATUS_PENDING,
        auto_reject_artifacts,
        load_manifest,
        save_manifest,
    )

    manifest = load_manifest(args.manifest)
    rejected = 0
    for record in manifest.attacks:
        check = auto_reject_artifacts(load_image(record.image), load_landmarks(record.landmarks))
        record.auto = check.to_dict()
        if check.passed:
            record.status = STATUS_PENDING
        else:
            record.status = STATUS_AUTO_REJECTED
            record.reject_reason = check.reason
            rejected += 1
    save_manifest(args.manifest, manifest)
    print(f"inspected {len(manifest.attacks)} attacks, auto-rejected {rejected}")
    return 0


def _cmd_pipeline(args) -> int:
    from dataclasses import replace

    from .pipeline import load_config, run_pipeline

    config = load_config(args.config)
    if args.out:
        config = replace(config, out=str(Path(args.out).resolve()))
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    train_manifest, eval_manifest = run_pipeline(config)
    for manifest in (train_manifest, eval_manifest):
        counts = manifest.status_counts()
        print(
            f"{manifest.split}: {len(manifest.bonafide)} bona fide, {len(manifest.pairs)} pairs, "
            f"{counts['pending']} pending, {counts['auto_rejected']} auto-rejected"
        )
    print(f"manifests under {config.out}")
    return 0


def _cmd_review_serve(args) -> int:
    from .review import serve

    serve(args.manifest, host=args.host, port=args.port, ui_dir=args.ui)
    return 0


def _cmd_train_baseline(args) -> int:
    from .baseline import TrainConfig, save_model, train
    from .baseline.data import build_dataset
    from .pipeline import load_manifest

    manifest = load_manifest(args.manifest)
    features, labels, _ = build_dataset(manifest)
    config = TrainConfig(
        lr=args.lr, epochs=args.epochs, patience=args.patience, weight_decay=args.weight_decay,
        seed=args.seed if args.seed is not None else 0,
    )
    model, history = train(features, labels, config)
    save_model(args.out, model)
    print(
        f"trained on {len(labels)} samples, {history.epochs_run} epochs "
        f"(best {history.best_epoch}), val loss {history.val_loss[history.best_epoch - 1]:.4f}"
    )
    return 0


def _cmd_score(args) -> int:
    from .baseline import load_model
    from .baseline.data import build_dataset
    from .metrics import ScoreSet, save_scores
    from .pipeline import load_manifest

    model = load_model(args.model)
    manifest = load_manifest(args.manifest)
    features, labels, ids = build_dataset(manifest)
    scores = model.score(features)
    save_scores(args.out, ScoreSet(scores, labels.astype(bool), tuple(ids)))
    print(f"scored {len(ids)} samples -> {args.out}")
    return 0


def _cmd_eval(args) -> int:
    from .metrics import evaluate, load_scores, save_report, save_roc_csv

    scores = load_scores(args.scores)
    report = evaluate(scores)
    save_report(args.out, report)
    if args.roc_csv:
        save_roc_csv(args.roc_csv, report)
    print(f"EER {report.eer:.2f}% @ threshold {report.eer_threshold:.4f}")
    for target, value in sorted(report.bpcer_at_apcer.items()):
        flag = " (saturated)" if target in report.saturated_targets else ""
        print(f"BPCER @ APCER {target:g}%: {value:.2f}%{flag}")
    print(f"report -> {args.out}")
    return 0


def _cmd_synth(args) -> int:
    from .synthface import generate_corpus

    ids = generate_corpus(args.out, args.count, args.seed or 0, prefix=args.prefix, size=args.size)
    print(f"generated {len(ids)} synthetic faces under {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphforge",
        description="Morphing-attack dataset construction, evaluation and review tooling",
    )
    parser.add_argument("--version", action="version", version=f"morphforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="keep the highest-quality image ids")
    p.add_argument("--quality", required=True, help="image_id,quality CSV")
    p.add_argument("--keep", type=int, required=True)
    p.add_argument("--out", required=True, help="output id list (one per line)")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("split", help="split ids into bona fide and morph pool halves")
    p.add_argument("--ids", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-bf", required=True)
    p.add_argument("--out-pool", required=True)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("pair", help="select key images and random partners")
    p.add_argument("--pool", required=True)
    p.add_argument("--n-keys", type=int, required=True)
    p.add_argument("--partners", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="pairs JSON")
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("morph", help="morph the pairs of a pairs JSON")
    p.add_argument("--pairs", required=True)
    p.add_argument("--images", required=True)
    p.add_argument("--landmarks", required=True)
    p.add_argument("--blend", type=float, default=0.5)
    p.add_argument("--no-boundary", action="store_true", help="skip frame boundary points")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_morph)

    p = sub.add_parser("inspect", help="auto-reject morphs with mouth artifacts")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("pipeline", help="run the full two-split dataset pipeline")
    p.add_argument("--config", required=True, help="TOML or JSON config")
    p.add_argument("--out", default=None, help="override the configured output dir")
    p.add_argument("--seed", type=int, default=None, help="override the configured seed")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("review-serve", help="serve the human review API/UI")
    p.add_argument("--manifest", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--ui", default=None, help="directory with the built review UI")
    p.set_defaults(func=_cmd_review_serve)

    p = sub.add_parser("train-baseline", help="train the reference detector on a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--lr", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--patience", type=int, default=20)
    p.add_argument("--weight-decay", type=float, default=1e-5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="model JSON")
    p.set_defaults(func=_cmd_train_baseline)

    p = sub.add_parser("score", help="score a manifest's samples with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="score CSV")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("eval", help="compute EER/BPCER@APCER/ROC from a score CSV")
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True, help="report JSON")
    p.add_argument("--roc-csv", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("synth", help="generate a synthetic desk-scale corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=250)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefix", default="face")
    p.add_argument("--size", type=int, default=96)
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MorphforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
