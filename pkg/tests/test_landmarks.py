import numpy as np
import pytest

from morphforge.errors import LandmarkCountMismatch
from morphforge.landmarks import (
    LandmarkSet,
    boundary_points,
    interpolate_landmarks,
    load_landmarks,
    save_landmarks,
)


def test_w0_returns_a_exactly():
    a = LandmarkSet([(1.0, 2.0), (3.0, 4.0)], 10, 10)
    b = LandmarkSet([(5.0, 6.0), (7.0, 8.0)], 10, 10)
    assert interpolate_landmarks(a, b, 0.0) is a


def test_w1_returns_b_exactly():
    a = LandmarkSet([(1.0, 2.0), (3.0, 4.0)], 10, 10)
    b = LandmarkSet([(5.0, 6.0), (7.0, 8.0)], 10, 10)
    assert interpolate_landmarks(a, b, 1.0) is b


def test_quarter_interpolation():
    a = LandmarkSet([(10.0, 20.0)], 64, 64)
    b = LandmarkSet([(30.0, 40.0)], 64, 64)
    out = interpolate_landmarks(a, b, 0.25)
    assert np.allclose(out.points, [(15.0, 25.0)])


def test_count_mismatch_rejected():
    a = LandmarkSet([(1.0, 1.0)], 10, 10)
    b = LandmarkSet([(1.0, 1.0), (2.0, 2.0)], 10, 10)
    with pytest.raises(LandmarkCountMismatch):
        interpolate_landmarks(a, b, 0.5)


def test_dimension_mismatch_rejected():
    a = LandmarkSet([(1.0, 1.0)], 10, 10)
    b = LandmarkSet([(1.0, 1.0)], 12, 10)
    with pytest.raises(LandmarkCountMismatch):
        interpolate_landmarks(a, b, 0.5)


def test_out_of_bounds_landmarks_rejected():
    with pytest.raises(ValueError):
        LandmarkSet([(10.0, 5.0)], 10, 10)
    with pytest.raises(ValueError):
        LandmarkSet([(-0.5, 5.0)], 10, 10)


def test_boundary_points_cover_frame_corners_and_midpoints():
    pts = boundary_points(101, 51)
    assert pts.shape == (8, 2)
    assert [100.0, 50.0] in pts.tolist()
    assert [50.0, 0.0] in pts.tolist()
    assert pts[:, 0].max() == 100.0 and pts[:, 1].max() == 50.0


def test_json_round_trip(tmp_path):
    lm = LandmarkSet([(1.5, 2.25), (3.0, 4.0)], 32, 16)
    path = tmp_path / "face.json"
    save_landmarks(path, lm, image_name="face.png")
    loaded = load_landmarks(path)
    assert loaded.width == 32 and loaded.height == 16
    assert np.array_equal(loaded.points, lm.points)


def test_plain_text_xy_lines(tmp_path):
    path = tmp_path / "face.txt"
    path.write_text("1.5 2.25\n3 4\n")
    loaded = load_landmarks(path, width=32, height=16)
    assert np.array_equal(loaded.points, [[1.5, 2.25], [3.0, 4.0]])


def test_plain_text_requires_dimensions(tmp_path):
    path = tmp_path / "face.txt"
    path.write_text("1 2\n")
    with pytest.raises(ValueError):
        load_landmarks(path)
