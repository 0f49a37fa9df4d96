import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morphforge.landmarks import LandmarkSet
from morphforge.synthface import make_face


@pytest.fixture(scope="session")
def face_pair():
    """Two 64x64 synthetic faces with landmarks."""
    img_a, lm_a = make_face(11, size=64)
    img_b, lm_b = make_face(22, size=64)
    return img_a, lm_a, img_b, lm_b


@pytest.fixture(scope="session")
def desk_corpus(tmp_path_factory):
    """Small disjoint train/eval corpora plus a pipeline config file."""
    from morphforge.synthface import generate_corpus

    root = tmp_path_factory.mktemp("corpus")
    generate_corpus(root / "train", 30, seed=101, prefix="tr", size=72)
    generate_corpus(root / "eval", 30, seed=202, prefix="ev", size=72)
    config = root / "desk.toml"
    config.write_text(
        "\n".join(
            [
                "seed = 13",
                "keep = 20",
                "n_keys = 2",
                "partners_per_key = 3",
                "blend = 0.5",
                "workers = 2",
                'train_images = "train/images"',
                'train_landmarks = "train/landmarks"',
                'train_quality = "train/quality.csv"',
                'eval_images = "eval/images"',
                'eval_landmarks = "eval/landmarks"',
                'eval_quality = "eval/quality.csv"',
                'out = "out"',
            ]
        )
        + "\n"
    )
    return root


@pytest.fixture(scope="session")
def desk_manifests(desk_corpus):
    """Manifests from one pipeline run over the desk corpus."""
    from morphforge.pipeline import load_config, run_pipeline

    config = load_config(desk_corpus / "desk.toml")
    return run_pipeline(config), desk_corpus


def random_landmarks(rng: np.random.Generator, size: int, count: int = 68) -> LandmarkSet:
    pts = np.column_stack(
        [rng.uniform(6, size - 7, count), rng.uniform(6, size - 7, count)]
    )
    return LandmarkSet(pts, size, size)
