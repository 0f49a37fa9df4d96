"""Acceptance suite: each test implements one release criterion at its stated
tolerance and prints a PASS line (run with -s to see them inline)."""

import json
import time
from pathlib import Path

import numpy as np
import pytest

from morphforge.baseline import TrainConfig, batch_loss_and_grads, bce, train
from morphforge.baseline.data import build_dataset
from morphforge.geometry import affine_from_triangles, delaunay
from morphforge.metrics import (
    ScoreSet,
    apcer,
    bpcer,
    bpcer_at_apcer,
    eer,
    evaluate,
    roc,
    save_report,
)
from morphforge.morph import MorphParams, morph
from morphforge.pipeline import (
    PipelineConfig,
    filter_by_quality,
    run_pipeline,
    select_pairs,
    split_bf_attack,
)
from morphforge.pipeline.quality import QualityRecord
from morphforge.synthface import generate_corpus, make_face

from oracles import (
    count_apcer,
    count_bpcer,
    delaunay_violations,
    exhaustive_bpcer_at_apcer,
    exhaustive_eer,
    finite_difference,
    hull_area,
    scalar_morph,
)


def report(name: str) -> None:
    print(f"[ACCEPTANCE] {name}: PASS")


@pytest.fixture(scope="module")
def desk250(tmp_path_factory):
    """Desk scale: 250 candidate ids per split, 5 keys x 5 partners."""
    root = tmp_path_factory.mktemp("desk250")
    generate_corpus(root / "train", 250, seed=31, prefix="tr", size=72)
    generate_corpus(root / "eval", 250, seed=32, prefix="ev", size=72)
    config = PipelineConfig(
        train_images=str(root / "train/images"),
        train_landmarks=str(root / "train/landmarks"),
        train_quality=str(root / "train/quality.csv"),
        eval_images=str(root / "eval/images"),
        eval_landmarks=str(root / "eval/landmarks"),
        eval_quality=str(root / "eval/quality.csv"),
        out=str(root / "out"),
        seed=77,
        keep=50,
        n_keys=5,
        partners_per_key=5,
        workers=4,
    )
    return root, config


def test_geometry_oracle_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(3, 201))
        pts = rng.random((n, 2)) * 512.0
        mesh = delaunay(pts)
        assert delaunay_violations(pts, mesh.triangles) == 0
        hull = hull_area(pts)
        cover = float(mesh.triangle_areas().sum())
        assert abs(cover - hull) / hull < 1e-6
    for _ in range(100):
        src = rng.uniform(0, 512, (3, 2))
        dst = rng.uniform(0, 512, (3, 2))
        area_src = abs((src[1] - src[0])[0] * (src[2] - src[0])[1] - (src[1] - src[0])[1] * (src[2] - src[0])[0])
        area_dst = abs((dst[1] - dst[0])[0] * (dst[2] - dst[0])[1] - (dst[1] - dst[0])[1] * (dst[2] - dst[0])[0])
        if area_src < 100.0 or area_dst < 100.0:
            continue
        transform = affine_from_triangles(src, dst)
        assert np.abs(transform.apply(src) - dst).max() <= 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"geometry oracle suite took {elapsed:.1f}s"
    report(f"geometry oracle suite (100 sets, {elapsed:.1f}s < 30s)")


def test_morph_identities():
    img, lm = make_face(900, size=64)
    out, _ = morph(img, lm, img, lm, MorphParams(0.5, 0.5, 0))
    assert np.array_equal(out, img), "self-morph must be pixel-exact"

    img_b, lm_b = make_face(901, size=64)
    out, _ = morph(img, lm, img_b, lm_b, MorphParams(0.0, 0.0, 0))
    assert np.abs(out.astype(int) - img.astype(int)).max() <= 1

    rng = np.random.default_rng(7)
    for trial in range(10):
        a_img, a_lm = make_face(910 + trial, size=64)
        b_img, b_lm = make_face(960 + trial, size=64)
        beta = float(rng.uniform(0.05, 0.95))
        warp = float(rng.uniform(0.05, 0.95))
        fwd, _ = morph(a_img, a_lm, b_img, b_lm, MorphParams(beta, warp, 1))
        rev, _ = morph(b_img, b_lm, a_img, a_lm, MorphParams(1 - beta, 1 - warp, 1))
        assert np.abs(fwd.astype(int) - rev.astype(int)).max() <= 1
    report("morph identities (self-exact, blend-degenerate, 10x mirror symmetry)")


def test_morph_matches_scalar_oracle():
    img_a, lm_a = make_face(501, size=64)
    img_b, lm_b = make_face(502, size=64)
    got, _ = morph(img_a, lm_a, img_b, lm_b, MorphParams(0.5, 0.5, 2))
    expected = scalar_morph(
        img_a, lm_a.points, img_b, lm_b.points, 0.5, 0.5,
        lambda pts: delaunay(pts).triangles.tolist(),
    )
    max_diff = np.abs(got.astype(int) - expected.astype(int)).max()
    assert max_diff <= 1
    report(f"morph vs scalar reference (64x64, max |diff| = {max_diff} <= 1)")


def test_pipeline_desk_scale_counts_and_replay(desk250):
    root, config = desk250
    start = time.perf_counter()
    train_m, eval_m = run_pipeline(config)
    for manifest in (train_m, eval_m):
        assert len(manifest.bonafide) == 25
        assert len(manifest.pool) == 25
        assert len(manifest.pairs) == 25, "5 keys x 5 partners must give 25 pairs"
        assert not set(manifest.bonafide) & set(manifest.pool)
    first = {
        name: (Path(config.out) / name).read_bytes()
        for name in ("train_manifest.json", "eval_manifest.json")
    }
    run_pipeline(config)
    for name, payload in first.items():
        assert (Path(config.out) / name).read_bytes() == payload, "manifests must replay byte-identically"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"desk pipeline took {elapsed:.1f}s"
    report(f"pipeline desk scale (250->50->25/25, 25 pairs, replay-identical, {elapsed:.1f}s < 60s)")


def test_production_scale_arithmetic():
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    qualities = rng.random(250_000)
    records = [QualityRecord(f"img{i:06d}", float(q)) for i, q in enumerate(qualities)]
    kept = filter_by_quality(records, 50_000)
    assert len(kept) == 50_000
    bonafide, pool = split_bf_attack(kept, rng)
    assert len(bonafide) == 25_000 and len(pool) == 25_000
    pairs = select_pairs(pool, 5_000, 5, rng, 99)
    assert len(pairs) == 25_000
    keys = {p.key_id for p in pairs}
    assert len(keys) == 5_000
    assert all(p.partner_id not in keys for p in pairs)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"production-scale arithmetic took {elapsed:.1f}s"
    report(f"production-scale arithmetic (250k -> 50k -> 25k+25k -> 25k pairs, {elapsed:.1f}s < 60s)")


def test_metrics_against_bruteforce_oracle():
    rng = np.random.default_rng(123)
    for trial in range(3):
        scores = rng.normal(0, 1, 1000)
        labels = rng.random(1000) < 0.5
        score_set = ScoreSet(scores, labels)
        att = scores[labels].tolist()
        bf = scores[~labels].tolist()

        for t in rng.normal(0, 1, 20):
            assert abs(apcer(score_set, t) - count_apcer(att, t)) <= 1e-12
            assert abs(bpcer(score_set, t) - count_bpcer(bf, t)) <= 1e-12

        rate, threshold = eer(score_set)
        oracle_rate, oracle_threshold = exhaustive_eer(att, bf)
        assert abs(rate - oracle_rate) <= 1e-12
        assert threshold == oracle_threshold

        for target in (0.1, 1.0, 10.0, 20.0):
            assert abs(
                bpcer_at_apcer(score_set, target) - exhaustive_bpcer_at_apcer(att, bf, target)
            ) <= 1e-12

        base_roc = roc(score_set)
        for transform in (lambda x: 3.0 * x - 1.0, lambda x: x**3):
            mapped = ScoreSet(transform(scores), labels)
            assert eer(mapped)[0] == rate, "EER must be invariant under monotone transforms"
            assert roc(mapped) == base_roc, "ROC point set must be invariant"
    report("metrics vs exhaustive-sweep oracle (1e-12) + monotone invariance (exact)")


def test_loss_and_gradient_checks():
    assert abs(bce(0.5, 1) - np.log(2.0)) < 1e-6
    assert abs(bce(0.5, 0) - np.log(2.0)) < 1e-6
    assert abs(bce(0.9, 0) - 2.302585) < 1e-6

    rng = np.random.default_rng(321)
    worst = 0.0
    for _ in range(50):
        d = int(rng.integers(3, 9))
        cells = int(rng.integers(2, 7))
        n = int(rng.integers(2, 6))
        w = rng.normal(0, 0.5, d)
        b = float(rng.normal(0, 0.3))
        mh = rng.normal(0, 0.5, (cells, d))
        x = rng.normal(0, 1, (n, d))
        y = (rng.random(n) < 0.5).astype(float)
        _, gw, gb, gm = batch_loss_and_grads(w, b, mh, x, y)
        analytic = np.concatenate([gw, [gb], gm.reshape(-1)])

        def loss_of(flat, d=d, cells=cells, x=x, y=y):
            value, _, _, _ = batch_loss_and_grads(
                flat[:d], float(flat[d]), flat[d + 1 :].reshape(cells, d), x, y
            )
            return value

        numeric = finite_difference(loss_of, np.concatenate([w, [b], mh.reshape(-1)]), h=1e-5)
        rel = np.abs(analytic - numeric).max() / max(np.abs(numeric).max(), 1e-12)
        worst = max(worst, rel)
    assert worst < 1e-4, f"worst relative gradient error {worst:.2e}"
    report(f"pw_loss gradients vs central differences (worst rel err {worst:.1e} < 1e-4)")


def test_end_to_end_smoke(desk250, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    root, config = desk250
    start = time.perf_counter()
    out = Path(config.out)
    if not (out / "train_manifest.json").exists():
        run_pipeline(config)

    from morphforge.pipeline import load_manifest

    train_manifest = load_manifest(out / "train_manifest.json")
    eval_manifest = load_manifest(out / "eval_manifest.json")

    x_train, y_train, _ = build_dataset(train_manifest)
    assert (y_train == 0).sum() >= 20 and (y_train == 1).sum() >= 20
    model, _ = train(x_train, y_train, TrainConfig(lr=1e-4, epochs=300, patience=20, seed=3))

    x_eval, y_eval, ids = build_dataset(eval_manifest)
    scores = ScoreSet(model.score(x_eval), y_eval.astype(bool), tuple(ids))
    mad_report = evaluate(scores)
    assert mad_report.eer < 50.0, f"EER {mad_report.eer:.1f}% is not better than chance"

    report_path = tmp_path / "report.json"
    save_report(report_path, mad_report)
    schema = json.loads(
        (Path(__file__).parent.parent / "src/morphforge/schemas/mad_report.schema.json").read_text()
    )
    jsonschema.validate(json.loads(report_path.read_text()), schema)
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0, f"end-to-end smoke took {elapsed:.1f}s"
    report(
        f"end-to-end smoke (train->score->eval, EER {mad_report.eer:.1f}% < 50%, "
        f"schema-valid report, {elapsed:.1f}s < 5min)"
    )
