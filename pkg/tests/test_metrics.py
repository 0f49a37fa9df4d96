import numpy as np
import pytest

from morphforge.errors import NoAttackSamples, NoBonafideSamples
from morphforge.metrics import (
    ScoreSet,
    apcer,
    bpcer,
    bpcer_at_apcer,
    bpcer_at_apcer_saturated,
    eer,
    evaluate,
    load_scores,
    roc,
    save_report,
    save_roc_csv,
    save_scores,
)

from oracles import (
    count_apcer,
    count_bpcer,
    exhaustive_bpcer_at_apcer,
    exhaustive_eer,
    reference_roc,
    sweep_thresholds,
)


def make_set(attack_scores, bonafide_scores):
    scores = np.concatenate([attack_scores, bonafide_scores])
    labels = np.array([True] * len(attack_scores) + [False] * len(bonafide_scores))
    return ScoreSet(scores, labels)


def random_set(rng, n=1000):
    scores = rng.normal(0, 1, n)
    labels = rng.random(n) < 0.5
    if not labels.any():
        labels[0] = True
    if labels.all():
        labels[-1] = False
    return ScoreSet(scores, labels)


def test_apcer_trivial_cases():
    s = make_set([0.9, 0.8], [0.1])
    assert apcer(s, 0.5) == 0.0
    s = make_set([0.9, 0.1], [0.1])
    assert apcer(s, 0.5) == 50.0


def test_bpcer_trivial_cases():
    s = make_set([0.9], [0.1, 0.2])
    assert bpcer(s, 0.5) == 0.0
    s = make_set([0.9], [0.6, 0.2])
    assert bpcer(s, 0.5) == 50.0


def test_rates_match_counting_oracle_at_20_thresholds():
    rng = np.random.default_rng(0)
    s = random_set(rng)
    att = s.attack_scores.tolist()
    bf = s.bonafide_scores.tolist()
    for t in np.linspace(-3, 3, 20):
        assert apcer(s, t) == pytest.approx(count_apcer(att, t), abs=1e-12)
        assert bpcer(s, t) == pytest.approx(count_bpcer(bf, t), abs=1e-12)


def test_eer_perfectly_separated_is_zero():
    s = make_set([0.8, 0.9, 0.95], [0.1, 0.2, 0.3])
    rate, _ = eer(s)
    assert rate == 0.0


def test_eer_interleaved_two_plus_two():
    # thresholds: -inf, .1, .2, .3, .4, inf; the gap |APCER-BPCER| is
    # minimized (0) at t=.3 where both rates are 50%
    s = make_set([0.4, 0.2], [0.3, 0.1])
    rate, threshold = eer(s)
    assert rate == 50.0
    assert threshold == 0.3


def test_eer_matches_exhaustive_sweep_oracle():
    rng = np.random.default_rng(1)
    s = random_set(rng)
    rate, threshold = eer(s)
    expected_rate, expected_threshold = exhaustive_eer(
        s.attack_scores.tolist(), s.bonafide_scores.tolist()
    )
    assert abs(rate - expected_rate) <= 1e-12
    assert threshold == expected_threshold


def test_bpcer_at_apcer_separated_zero_at_every_target():
    s = make_set([0.8, 0.9, 0.95], [0.1, 0.2, 0.3])
    for target in (0.1, 1.0, 10.0, 20.0, 50.0):
        assert bpcer_at_apcer(s, target) == 0.0


def test_bpcer_at_apcer_20_entry_operating_table():
    # 10 attacks at 1.0..0.1, 10 bona fides at 0.95..0.05 (interleaved);
    # expectations hand-enumerated over the 21 operating points
    attacks = [round(0.1 * i, 2) for i in range(1, 11)]
    bonafide = [round(0.1 * i - 0.05, 2) for i in range(1, 11)]
    s = make_set(attacks, bonafide)
    # APCER <= 10% holds up to t=0.2 (one attack below), where BPCER counts
    # bona fides >= 0.2: 0.25..0.95 -> 80%
    assert bpcer_at_apcer(s, 10.0) == 80.0
    # APCER <= 20% holds up to t=0.3 (two attacks below) -> bf >= 0.3: 70%
    assert bpcer_at_apcer(s, 20.0) == 70.0
    # APCER <= 50% holds up to t=0.6 -> bf >= 0.6: 40%
    assert bpcer_at_apcer(s, 50.0) == 40.0
    # target below 1/10 attacks: only APCER=0 thresholds (t <= 0.1) -> 90%
    assert bpcer_at_apcer(s, 1.0) == 90.0
    for target in (1.0, 10.0, 20.0, 50.0):
        assert bpcer_at_apcer(s, target) == exhaustive_bpcer_at_apcer(attacks, bonafide, target)


def test_bpcer_at_apcer_matches_oracle_on_random_sets():
    rng = np.random.default_rng(2)
    s = random_set(rng, 400)
    att = s.attack_scores.tolist()
    bf = s.bonafide_scores.tolist()
    for target in (0.1, 1.0, 10.0, 20.0):
        assert bpcer_at_apcer(s, target) == pytest.approx(
            exhaustive_bpcer_at_apcer(att, bf, target), abs=1e-12
        )


def test_saturation_flag_tracks_attack_count():
    s = make_set([0.9] * 5, [0.1] * 50)  # 5 attacks: APCER resolution 20%
    assert bpcer_at_apcer_saturated(s, 10.0)
    assert not bpcer_at_apcer_saturated(s, 20.0)


def test_roc_endpoints_and_monotonicity():
    rng = np.random.default_rng(3)
    s = random_set(rng, 300)
    points = roc(s)
    assert points[0] == (0.0, 0.0)
    assert points[-1] == (100.0, 100.0)
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    assert all(a <= b for a, b in zip(xs, xs[1:]))
    assert all(a <= b for a, b in zip(ys, ys[1:]))
    assert points == reference_roc(s.attack_scores.tolist(), s.bonafide_scores.tolist())


def test_roc_separated_passes_through_0_100():
    s = make_set([0.8, 0.9], [0.1, 0.2])
    assert (0.0, 100.0) in roc(s)


def test_roc_chance_level_auc():
    rng = np.random.default_rng(4)
    scores = rng.normal(0, 1, 10_000)
    labels = rng.random(10_000) < 0.5  # labels independent of scores
    s = ScoreSet(scores, labels)
    points = np.array(roc(s)) / 100.0
    auc = np.trapezoid(points[:, 1], points[:, 0])
    assert 0.48 <= auc <= 0.52


def test_monotone_transform_invariance_exact():
    rng = np.random.default_rng(5)
    s = random_set(rng, 500)
    base_eer, _ = eer(s)
    base_roc = roc(s)
    base_table = {t: bpcer_at_apcer(s, t) for t in (0.1, 1.0, 10.0, 20.0)}
    for transform in (lambda x: 2.0 * x + 3.0, lambda x: x**3, np.arctan):
        mapped = ScoreSet(transform(s.scores), s.labels)
        assert eer(mapped)[0] == base_eer
        assert roc(mapped) == base_roc
        for t, value in base_table.items():
            assert bpcer_at_apcer(mapped, t) == value


def test_full_sweep_monotonicity():
    # classified-attack rule is score >= threshold, so raising the threshold
    # can only push more attacks below it (APCER up) and fewer bona fides
    # above it (BPCER down)
    rng = np.random.default_rng(8)
    s = random_set(rng, 300)
    thresholds = sweep_thresholds(s.scores.tolist())
    apcers = [apcer(s, t) for t in thresholds]
    bpcers = [bpcer(s, t) for t in thresholds]
    assert all(a <= b for a, b in zip(apcers, apcers[1:]))
    assert all(a >= b for a, b in zip(bpcers, bpcers[1:]))


def test_empty_class_is_hard_error():
    attacks_only = ScoreSet([0.5, 0.6], [True, True])
    bf_only = ScoreSet([0.5, 0.6], [False, False])
    with pytest.raises(NoBonafideSamples):
        eer(attacks_only)
    with pytest.raises(NoAttackSamples):
        eer(bf_only)
    with pytest.raises(NoAttackSamples):
        apcer(bf_only, 0.5)
    with pytest.raises(NoBonafideSamples):
        bpcer(attacks_only, 0.5)


def test_report_regenerates_identically():
    rng = np.random.default_rng(6)
    s = random_set(rng, 200)
    first = evaluate(s).to_dict()
    second = evaluate(s).to_dict()
    assert first == second


def test_score_csv_round_trip(tmp_path):
    rng = np.random.default_rng(7)
    s = random_set(rng, 50)
    path = tmp_path / "scores.csv"
    save_scores(path, s)
    loaded = load_scores(path)
    assert np.array_equal(loaded.scores, s.scores)
    assert np.array_equal(loaded.labels, s.labels)


def test_score_csv_polarity_flag(tmp_path):
    path = tmp_path / "scores.csv"
    path.write_text(
        "# polarity: attack_low\nsample_id,label,score\na,attack,-0.9\nb,bonafide,-0.1\n"
    )
    loaded = load_scores(path)
    # attack_low files are flipped so higher stays more attack-like
    assert loaded.scores[loaded.labels][0] == 0.9


def test_report_and_roc_files(tmp_path):
    s = make_set([0.8, 0.9], [0.1, 0.2])
    report = evaluate(s)
    save_report(tmp_path / "report.json", report)
    save_roc_csv(tmp_path / "roc.csv", report)
    assert (tmp_path / "report.json").stat().st_size > 0
    text = (tmp_path / "roc.csv").read_text().splitlines()
    assert text[0] == "apcer_percent,one_minus_bpcer_percent"
    assert len(text) == len(report.roc) + 1


def test_bad_score_files_rejected(tmp_path):
    bad_header = tmp_path / "bad.csv"
    bad_header.write_text("id,cls,val\na,attack,0.5\n")
    with pytest.raises(ValueError):
        load_scores(bad_header)
    bad_label = tmp_path / "label.csv"
    bad_label.write_text("sample_id,label,score\na,genuine,0.5\n")
    with pytest.raises(ValueError):
        load_scores(bad_label)


def test_sweep_includes_sentinels():
    ts = sweep_thresholds([0.5, 0.1])
    assert ts[0] == -np.inf and ts[-1] == np.inf
