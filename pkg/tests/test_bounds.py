"""
Tests for psi, the log-convex envelope and the lower bounds q and q_lcv.
"""
import math

import numpy as np
import pytest

from services import bounds
from services.exceptions import DomainError
from services.sampling import DEFAULT_SEED
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.estimate_object import OPEN

HALF_PI: float = 0.5 * math.pi
SPAN: float = CONSTANTS.theta0 - HALF_PI


def test_psi_left_examples():
    assert bounds.psi(0.0) == 0.0
    assert bounds.psi(HALF_PI) == pytest.approx(1.5, abs=1e-12)


def test_psi_domain():
    with pytest.raises(DomainError):
        bounds.psi(-0.1)
    with pytest.raises(DomainError):
        bounds.psi(3.5)


def test_psi_left_is_the_derivative_of_the_cdf():
    h = 1e-6
    for theta in np.linspace(0.2, 1.5, 8):
        slope = (bounds.theta_min_cdf_left(theta + h) - bounds.theta_min_cdf_left(theta - h)) / (2.0 * h)
        assert slope == pytest.approx(bounds.psi_left(theta), rel=1e-6)
    assert bounds.theta_min_cdf_left(HALF_PI) == pytest.approx(0.875, abs=1e-15)


def test_psi_areas(spec):
    left, right = bounds.psi_areas(spec)
    assert left == pytest.approx(0.875, abs=1e-9)
    assert right == pytest.approx(4.0 * CONSTANTS.kappa_closed, abs=1e-6)


def test_psi_is_non_negative(spec):
    assert np.all(bounds.psi_array(np.linspace(0.0, math.pi, 61), spec) >= 0.0)


def test_psi_lcv_endpoints():
    assert bounds.psi_lcv(HALF_PI) == pytest.approx(1.5, abs=1e-15)
    assert bounds.psi_lcv(CONSTANTS.theta0) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        bounds.psi_lcv(2.0)


def test_psi_lcv_array_is_nan_outside_its_range():
    values = bounds.psi_lcv_array(np.array([1.0, HALF_PI, CONSTANTS.theta0, 2.5]))
    assert math.isnan(values[0]) and math.isnan(values[3])
    assert values[1] == pytest.approx(1.5)


def test_Psi_lcv_closed_form(spec):
    expected = SPAN * (1.5 / math.log(2.5) - 1.0)
    assert bounds.Psi_lcv(CONSTANTS.theta0) == pytest.approx(expected, abs=1e-14)
    assert bounds.Psi_lcv(CONSTANTS.theta0) == pytest.approx(0.2165, abs=1e-4)
    for theta in np.linspace(HALF_PI, CONSTANTS.theta0, 7):
        assert bounds.Psi_lcv(float(theta)) == pytest.approx(bounds.Psi_lcv_quad(float(theta), spec), abs=1e-10)


def test_q_at_88_degrees(spec):
    assert bounds.q_bound(math.radians(88.0), spec) == pytest.approx(0.0765, abs=5e-4)


def test_q_lcv_at_88_degrees():
    assert bounds.q_lcv_bound(math.radians(88.0)) == pytest.approx(0.0766, abs=5e-4)


def test_bounds_approach_one_eighth_at_right_angle(spec):
    omega = HALF_PI - 1e-9
    assert bounds.q_bound(omega, spec) == pytest.approx(0.125, abs=1e-6)
    assert bounds.q_lcv_bound(omega) == pytest.approx(0.125, abs=1e-6)


def test_bound_domains(spec):
    with pytest.raises(DomainError):
        bounds.q_bound(HALF_PI, spec)
    with pytest.raises(DomainError):
        bounds.q_lcv_bound(1.0)


def test_thresholds(spec):
    assert math.degrees(bounds.threshold_q(spec)) == pytest.approx(84.25, abs=0.05)
    assert math.degrees(bounds.threshold_q_lcv()) == pytest.approx(83.90, abs=0.05)


def test_bound_report(spec):
    report = bounds.bound_report(math.radians(88.0), spec)
    assert report.q == pytest.approx(0.0765, abs=5e-4)
    assert report.q_lcv == pytest.approx(0.0766, abs=5e-4)
    assert report.gilbert == pytest.approx(0.8567, abs=1e-4)
    assert report.p_exact_or_open is OPEN
    above = bounds.bound_report(math.radians(120.0), spec)
    assert above.q is None and above.q_lcv is None
    assert above.p_exact_or_open == pytest.approx(105.0 / 128.0)


def test_continuity_probe(spec):
    left, right = bounds.continuity_probe(1e-6, spec)
    assert left == pytest.approx(1.5, abs=1e-5)
    assert right > 0.0


def test_envelope_check_reports_without_raising(spec):
    violations = bounds.envelope_check(spec=spec)
    for theta, envelope, value in violations:
        assert HALF_PI <= theta <= CONSTANTS.theta0
        assert envelope < value


def test_dominance_grid_excludes_right_angle():
    grid = bounds.default_dominance_grid()
    assert len(grid) == 19
    assert grid[0] > HALF_PI
    assert grid[-1] == pytest.approx(math.pi)


def test_dominance_check_small(spec):
    report = bounds.dominance_check(100_000, seed=11, spec=spec)
    assert not report.refined_violations
    assert not report.crude_violations
    last = report.rows[-1]
    assert last.f_hat == pytest.approx(1.0)
    assert last.refined == pytest.approx(CONSTANTS.e_n_closed, abs=1e-5)
    with pytest.raises(DomainError):
        bounds.dominance_check(10, grid=[HALF_PI], spec=spec)


@pytest.mark.slow
def test_dominance_check_full(spec):
    report = bounds.dominance_check(1_000_000, seed=DEFAULT_SEED, spec=spec)
    assert not report.refined_violations
    assert not report.crude_violations
