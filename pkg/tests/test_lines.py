"""Oriented-line correspondence: images, round trips, distances."""

import numpy as np
import pytest

from ruledgeom.dual import dual_angle
from ruledgeom.errors import NotALine
from ruledgeom.lines import (Line, common_perpendicular, dual_to_line,
                             line_to_dual, sample_lines)


def test_line_through_origin_has_zero_moment():
    v = line_to_dual(Line(point=(0, 0, 0), direction=(1, 0, 0)))
    assert np.allclose(v.real, [1, 0, 0], atol=1e-15)
    assert np.allclose(v.dual, [0, 0, 0], atol=1e-15)


def test_moment_by_hand():
    v = line_to_dual(Line(point=(0, 0, 1), direction=(1, 0, 0)))
    assert np.allclose(v.dual, [0, 1, 0], atol=1e-15)


def test_moment_independent_of_point():
    l1 = Line(point=(2, -3, 1), direction=(0.6, 0.8, 0))
    shifted = np.asarray(l1.point) + 4.2 * l1.direction
    l2 = Line(point=shifted, direction=l1.direction)
    v1, v2 = line_to_dual(l1), line_to_dual(l2)
    assert np.allclose(v1.dual, v2.dual, atol=1e-13)


def test_dual_to_line_examples():
    from ruledgeom.dual import DualVector
    l = dual_to_line(DualVector((1, 0, 0), (0, 0, 0)))
    assert np.allclose(l.point, [0, 0, 0]) and np.allclose(l.direction, [1, 0, 0])

    l = dual_to_line(DualVector((1, 0, 0), (0, 1, 0)))
    assert np.allclose(l.point, [0, 0, 1], atol=1e-15)
    assert np.allclose(l.direction, [1, 0, 0])


def test_dual_to_line_rejects_bad_moment():
    from ruledgeom.dual import DualVector
    with pytest.raises(NotALine):
        dual_to_line(DualVector((1, 0, 0), (0.1, 0, 0)))
    with pytest.raises(NotALine):
        dual_to_line(DualVector((1.1, 0, 0), (0, 0, 0)))


def test_common_perpendicular_cases():
    x_axis = Line(point=(0, 0, 0), direction=(1, 0, 0))
    crossing = Line(point=(0, 0, 0), direction=(0, 1, 0))
    d, _ = common_perpendicular(x_axis, crossing)
    assert abs(d) < 1e-14

    skew = Line(point=(0, 0, 2.0), direction=(0, 1, 0))
    d, (f1, f2) = common_perpendicular(x_axis, skew)
    assert abs(d - 2.0) < 1e-14
    assert np.allclose(f1, [0, 0, 0], atol=1e-14)
    assert np.allclose(f2, [0, 0, 2.0], atol=1e-14)

    d, _ = common_perpendicular(x_axis, x_axis)
    assert abs(d) < 1e-14


def test_round_trip_property():
    rng = np.random.default_rng(42)
    for line in sample_lines(rng, 1000):
        v = line_to_dual(line)
        assert abs(float(v.real @ v.real) - 1.0) < 1e-12
        assert abs(float(v.real @ v.dual)) < 1e-12
        back = dual_to_line(v)
        assert np.array_equal(back.direction, line.direction)
        assert line.distance_to_point(back.point) < 1e-10


def test_theta_star_matches_common_perpendicular():
    rng = np.random.default_rng(43)
    lines = sample_lines(rng, 1000)
    for l1, l2 in zip(lines[0::2], lines[1::2]):
        dist, _ = common_perpendicular(l1, l2)
        ang = dual_angle(line_to_dual(l1), line_to_dual(l2))
        assert abs(abs(ang.theta_star) - dist) < 1e-9


def test_zero_direction_rejected():
    with pytest.raises(ValueError):
        Line(point=(0, 0, 0), direction=(0, 0, 0))
