"""
Tests for the minimal enclosing cap and theta_min.
"""
import math

import numpy as np
import pytest

from services import geom_core, min_cap
from services.exceptions import DomainError
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.vector_object import PointQuad, UnitVector

E1 = UnitVector(1.0, 0.0, 0.0)
E2 = UnitVector(0.0, 1.0, 0.0)
E3 = UnitVector(0.0, 0.0, 1.0)


def _regular_tetrahedron() -> PointQuad:
    bottom = geom_core.points_on_circle(CONSTANTS.theta0, np.array([0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0]))
    return PointQuad(E3, *(UnitVector.from_array(p) for p in bottom))


def _random_quads(rng, count):
    return [PointQuad.from_array(q) for q in geom_core.sample_uniform_array(rng, (count, 4))]


def test_single_point():
    result = min_cap.min_enclosing_cap([E1])
    assert result.theta == 0.0
    assert result.cap.center == E1
    assert result.support == (0,)


def test_two_points_use_the_geodesic_midpoint():
    result = min_cap.min_enclosing_cap([E1, E2])
    assert result.theta == pytest.approx(0.25 * math.pi, abs=1e-12)
    assert np.allclose(result.cap.center.as_array(), np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0))
    assert result.support == (0, 1)


def test_regular_tetrahedron():
    quad = _regular_tetrahedron()
    result = min_cap.min_enclosing_cap(quad.points())
    assert result.theta == pytest.approx(CONSTANTS.theta0, abs=1e-12)
    assert len(result.support) == 3
    assert any(geom_core.angular_distance(result.cap.center, p) < 1e-9 for p in quad.points())
    assert min_cap.theta_min(quad) == pytest.approx(1.91063323, abs=1e-8)


def test_four_equal_points():
    assert min_cap.theta_min(PointQuad(E2, E2, E2, E2)) == 0.0


def test_antipodal_pair_is_a_flagged_tie():
    result = min_cap.min_enclosing_cap([E1, E1.antipode()])
    assert result.tie
    assert result.theta == pytest.approx(0.5 * math.pi)
    assert abs(result.cap.center.dot(E1)) < 1e-12


def test_antipodal_pair_with_a_third_point_is_not_a_tie():
    result = min_cap.min_enclosing_cap([E1, E1.antipode(), E2])
    assert not result.tie
    assert result.theta == pytest.approx(0.5 * math.pi, abs=1e-12)


def test_argument_errors():
    with pytest.raises(DomainError):
        min_cap.min_enclosing_cap([])
    with pytest.raises(DomainError):
        min_cap.min_enclosing_cap([E1, E2, E3, E1, E2])


def test_support_certificate(rng):
    for quad in _random_quads(rng, 200):
        points = list(quad.points())
        result = min_cap.min_enclosing_cap(points)
        for p in points:
            assert result.cap.contains(p, 1e-9)
        for index in result.support:
            assert geom_core.angular_distance(result.cap.center, points[index]) == pytest.approx(result.theta, abs=1e-9)
        for index in range(4):
            reduced = min_cap.min_enclosing_cap(points[:index] + points[index + 1:]).theta
            if index in result.support:
                assert reduced < result.theta
            else:
                assert reduced == pytest.approx(result.theta, abs=1e-9)


def test_exact_agrees_with_brute_force(rng):
    resolution = 0.02
    for quad in _random_quads(rng, 50):
        exact = min_cap.theta_min(quad)
        oracle = min_cap.brute_force_cap(quad.points(), resolution).theta
        assert exact <= oracle + 1e-12
        assert oracle - exact <= resolution


def test_brute_force_examples():
    assert min_cap.brute_force_cap([E3], 0.01).theta <= 0.01
    assert min_cap.brute_force_cap(_regular_tetrahedron().points(), 0.01).theta == pytest.approx(
        CONSTANTS.theta0, abs=0.01)
    with pytest.raises(DomainError):
        min_cap.brute_force_cap([E3], 0.0)


def test_theta_min_array_matches_scalar(rng):
    quads = geom_core.sample_uniform_array(rng, (500, 4))
    vectorised = min_cap.theta_min_array(quads)
    for row, value in zip(quads, vectorised):
        assert value == pytest.approx(min_cap.theta_min(PointQuad.from_array(row)), abs=1e-12)


def test_theta_min_array_falls_back_on_degenerate_rows():
    quads = np.array([[E1.as_array()] * 4, _regular_tetrahedron().as_array()])
    values = min_cap.theta_min_array(quads)
    assert values[0] == 0.0
    assert values[1] == pytest.approx(CONSTANTS.theta0, abs=1e-12)


def test_seven_eighths_within_a_hemisphere(rng):
    n = 100_000
    values = min_cap.theta_min_array(geom_core.sample_uniform_array(rng, (n, 4)))
    fraction = np.count_nonzero(values <= 0.5 * math.pi) / n
    assert abs(fraction - 0.875) < 4.0 * math.sqrt(0.875 * 0.125 / n)
