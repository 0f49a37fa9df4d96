"""ISO/IEC 30107-3 style evaluation of detector scores.

Scores are attack-likeness (higher = more attack-like); a sample is
classified attack when score >= threshold. APCER is the fraction of attacks
misclassified bona fide (score < threshold), BPCER the fraction of bona
fides misclassified attack (score >= threshold). All rates are percentages.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NoAttackSamples, NoBonafideSamples

ATTACK = "attack"
BONAFIDE = "bonafide"
DEFAULT_APCER_TARGETS = (0.1, 1.0, 10.0, 20.0)


@dataclass(frozen=True)
class ScoreSet:
    """Labeled detector scores."""

    scores: np.ndarray
    labels: np.ndarray  # bool, True = attack
    sample_ids: tuple[str, ...] = ()

    def __post_init__(self):
        s = np.asarray(self.scores, dtype=np.float64)
        lab = np.asarray(self.labels, dtype=bool)
        if s.shape != lab.shape or s.ndim != 1:
            raise ValueError("scores and labels must be equal-length 1-D arrays")
        if not np.all(np.isfinite(s)):
            raise ValueError("scores contain NaN or infinity")
        object.__setattr__(self, "scores", s)
        object.__setattr__(self, "labels", lab)

    @property
    def attack_scores(self) -> np.ndarray:
        return self.scores[self.labels]

    @property
    def bonafide_scores(self) -> np.ndarray:
        return self.scores[~self.labels]

    def require_both_classes(self) -> None:
        if self.attack_scores.size == 0:
            raise NoAttackSamples("score set has no attack entries")
        if self.bonafide_scores.size == 0:
            raise NoBonafideSamples("score set has no bona fide entries")


def apcer(scores: ScoreSet, threshold: float) -> float:
    """Percent of attacks classified bona fide at the threshold."""
    att = scores.attack_scores
    if att.size == 0:
        raise NoAttackSamples("APCER needs at least one attack entry")
    return 100.0 * float(np.count_nonzero(att < threshold)) / att.size


def bpcer(scores: ScoreSet, threshold: float) -> float:
    """Percent of bona fides classified attack at the threshold."""
    bf = scores.bonafide_scores
    if bf.size == 0:
        raise NoBonafideSamples("BPCER needs at least one bona fide entry")
    return 100.0 * float(np.count_nonzero(bf >= threshold)) / bf.size


def _threshold_sweep(scores: ScoreSet) -> np.ndarray:
    """Distinct scores plus -inf/+inf sentinels, ascending."""
    distinct = np.unique(scores.scores)
    return np.concatenate(([-np.inf], distinct, [np.inf]))


def _rates_at(scores: ScoreSet, thresholds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    att = np.sort(scores.attack_scores)
    bf = np.sort(scores.bonafide_scores)
    n_att_below = np.searchsorted(att, thresholds, side="left")
    n_bf_below = np.searchsorted(bf, thresholds, side="left")
    apcers = 100.0 * n_att_below / att.size
    bpcers = 100.0 * (bf.size - n_bf_below) / bf.size
    return apcers, bpcers


def eer(scores: ScoreSet) -> tuple[float, float]:
    """Equal error rate and its threshold.

    Sweeps every distinct score (plus sentinels), picks the threshold
    minimizing |APCER - BPCER| (ties to the lower threshold) and reports the
    midpoint rate there.
    """
    scores.require_both_classes()
    thresholds = _threshold_sweep(scores)
    apcers, bpcers = _rates_at(scores, thresholds)
    gaps = np.abs(apcers - bpcers)
    best = int(np.argmin(gaps))  # argmin takes the first (lowest) threshold on ties
    rate = 0.5 * (apcers[best] + bpcers[best])
    return float(rate), float(thresholds[best])


def bpcer_at_apcer(scores: ScoreSet, target_apcer: float) -> float:
    """BPCER at the operating point constrained by APCER <= target.

    APCER grows with the threshold, BPCER shrinks; the constrained optimum is
    the highest threshold keeping APCER within the target, equivalently the
    minimum BPCER subject to the constraint.
    """
    if not 0.0 < target_apcer < 100.0:
        raise ValueError(f"target APCER must be in (0, 100), got {target_apcer}")
    scores.require_both_classes()
    thresholds = _threshold_sweep(scores)
    apcers, bpcers = _rates_at(scores, thresholds)
    admissible = apcers <= target_apcer
    return float(np.min(bpcers[admissible]))


def bpcer_at_apcer_saturated(scores: ScoreSet, target_apcer: float) -> bool:
    """True when the attack set is too small to realize a nonzero APCER at or
    below the target, i.e. the operating point degenerates to APCER = 0."""
    n_att = scores.attack_scores.size
    return n_att == 0 or target_apcer < 100.0 / n_att


def roc(scores: ScoreSet) -> list[tuple[float, float]]:
    """Operating-curve points (APCER, 100 - BPCER) per threshold, ascending.

    Includes the all-attack (-inf) and all-bonafide (+inf) endpoints, so the
    list runs from (0, 0) to (100, 100) with both coordinates non-decreasing.
    """
    scores.require_both_classes()
    thresholds = _threshold_sweep(scores)
    apcers, bpcers = _rates_at(scores, thresholds)
    return [(float(a), float(100.0 - b)) for a, b in zip(apcers, bpcers)]


@dataclass(frozen=True)
class MadReport:
    """Evaluation summary: EER, BPCER at fixed APCER targets, ROC points."""

    eer: float
    eer_threshold: float
    bpcer_at_apcer: dict[float, float]
    saturated_targets: tuple[float, ...]
    roc: list[tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "eer_percent": self.eer,
            "eer_threshold": self.eer_threshold,
            "bpcer_at_apcer_percent": {
                f"{target:g}": value for target, value in sorted(self.bpcer_at_apcer.items())
            },
            "saturated_targets": [f"{t:g}" for t in self.saturated_targets],
            "roc": [[a, y] for a, y in self.roc],
        }


def evaluate(scores: ScoreSet, targets: tuple[float, ...] = DEFAULT_APCER_TARGETS) -> MadReport:
    scores.require_both_classes()
    rate, threshold = eer(scores)
    table = {t: bpcer_at_apcer(scores, t) for t in targets}
    saturated = tuple(t for t in targets if bpcer_at_apcer_saturated(scores, t))
    return MadReport(rate, threshold, table, saturated, roc(scores))


def load_scores(path: str | Path) -> ScoreSet:
    """Read a `sample_id,label,score` CSV.

    An optional leading comment `# polarity: attack_low` flips score signs so
    higher always means more attack-like internally.
    """
    path = Path(path)
    flip = False
    lines = path.read_text().splitlines()
    rows = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if "polarity" in stripped and "attack_low" in stripped:
                flip = True
            continue
        rows.append(stripped)
    if not rows:
        raise ValueError(f"{path}: empty score file")
    reader = csv.DictReader(rows)
    if reader.fieldnames is None or set(map(str.strip, reader.fieldnames)) != {
        "sample_id",
        "label",
        "score",
    }:
        raise ValueError(f"{path}: header must be sample_id,label,score")
    ids, labels, scores = [], [], []
    for row in reader:
        label = row["label"].strip()
        if label not in (ATTACK, BONAFIDE):
            raise ValueError(f"{path}: unknown label {label!r}")
        ids.append(row["sample_id"].strip())
        labels.append(label == ATTACK)
        scores.append(float(row["score"]))
    values = np.array(scores)
    return ScoreSet(-values if flip else values, np.array(labels), tuple(ids))


def save_scores(path: str | Path, scores: ScoreSet) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample_id", "label", "score"])
        ids = scores.sample_ids or tuple(f"sample_{i}" for i in range(len(scores.scores)))
        for sid, label, score in zip(ids, scores.labels, scores.scores):
            writer.writerow([sid, ATTACK if label else BONAFIDE, repr(float(score))])


def save_report(path: str | Path, report: MadReport) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")


def save_roc_csv(path: str | Path, report: MadReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["apcer_percent", "one_minus_bpcer_percent"])
        for a, y in report.roc:
            writer.writerow([repr(a), repr(y)])
