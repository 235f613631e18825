"""
Coverage of S² by four caps: the exact probability p(omega) where it is known,
Gilbert's bounds, the coverage decision for a concrete configuration and its
Monte Carlo estimate.
"""
from math import comb
from typing import Sequence
import logging
import math

import numpy as np

import logManager

from services.exceptions import DomainError
from services.min_cap import theta_min, theta_min_array
from services.sampling import (DEFAULT_BATCH_SIZE, STREAM_COVERAGE, STREAM_DUALITY, run_batches,
                               sample_quads, stream)
from sphere_objects.cap_object import Cap
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.estimate_object import OPEN, CoverageEstimate, OpenValue
from sphere_objects.report_object import DualityRow
from sphere_objects.vector_object import PointQuad, UnitVector

logger: logging.Logger = logManager.logger.get_logger(__name__)

BOUNDARY_SLACK: float = 1e-9
CAP_COUNT: int = 4
# Outward step of the arc probes, below BOUNDARY_SLACK.
PROBE_OFFSET: float = 1e-10
COINCIDENCE_TOLERANCE: float = 1e-12


def _check_omega(omega: float) -> None:
    if not 0.0 <= omega <= math.pi:
        raise DomainError(f"omega={omega!r} outside [0, pi]", "omega")


def p_exact(omega: float) -> float | OpenValue:
    """
    Probability that four random caps of radius omega cover S².

    Args:
        omega (float): Cap radius in [0, pi].

    Returns:
        float | OpenValue: 0 up to omega0, 1 - 2cos⁶(omega/2)(8 - 9cos²(omega/2))
            from pi/2 on, and OPEN in between.
    """
    _check_omega(omega)
    if omega <= CONSTANTS.omega0:
        return 0.0
    if omega < 0.5 * math.pi:
        return OPEN
    c2: float = math.cos(0.5 * omega) ** 2
    return 1.0 - 2.0 * c2 ** 3 * (8.0 - 9.0 * c2)


def gilbert_upper(omega: float) -> float:
    """
    Gilbert's upper bound 1 - 2cos⁸(omega/2) + cos⁴(omega).

    Args:
        omega (float): Cap radius in [0, pi].

    Returns:
        float: Upper bound for p(omega).
    """
    _check_omega(omega)
    return 1.0 - 2.0 * math.cos(0.5 * omega) ** 8 + math.cos(omega) ** 4


def gilbert_upper_sum(omega: float) -> float:
    """Gilbert's upper bound as the alternating sum over k of C(2,k)(1 - k sin²(omega/2))⁴."""
    _check_omega(omega)
    s2: float = math.sin(0.5 * omega) ** 2
    return sum(comb(2, k) * (-1) ** k * (1.0 - k * s2) ** 4 for k in range(3))


def gilbert_lower(omega: float) -> float:
    """Gilbert's lower bound, which is trivial (0) for four caps."""
    _check_omega(omega)
    return 0.0


def covers_by_duality(centers: PointQuad, omega: float) -> bool:
    """
    Equal-radius coverage by duality: the caps cover S² iff the minimal cap
    containing the antipodal centres has radius at least pi - omega.
    """
    _check_omega(omega)
    return theta_min(centers.antipodes()) >= math.pi - omega - BOUNDARY_SLACK


def covers_array(centers: np.ndarray, omega: float) -> np.ndarray:
    """
    Vectorised equal-radius coverage test.

    Args:
        centers (np.ndarray): Cap centres, shape (n, 4, 3).
        omega (float): Common cap radius.

    Returns:
        np.ndarray: Boolean coverage flag per configuration.
    """
    _check_omega(omega)
    return theta_min_array(-np.asarray(centers, dtype=float)) >= math.pi - omega - BOUNDARY_SLACK


def _frame(center: UnitVector) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of the plane perpendicular to center."""
    c: np.ndarray = center.as_array()
    axis: int = int(np.argmin(np.abs(c)))
    e: np.ndarray = np.zeros(3)
    e[axis] = 1.0
    first: np.ndarray = e - (e @ c) * c
    first /= np.linalg.norm(first)
    return first, np.cross(c, first)


def circle_intersections(first: Cap, second: Cap) -> list[np.ndarray]:
    """
    Intersection points of two cap boundary circles.

    Writes Y = u X1 + v X2 + w (X1 x X2) with X1.Y = cos(theta1), X2.Y = cos(theta2), |Y| = 1.

    Returns:
        list[np.ndarray]: Zero or two points (one repeated point when tangent).
    """
    x1: np.ndarray = first.center.as_array()
    x2: np.ndarray = second.center.as_array()
    d: float = float(x1 @ x2)
    if 1.0 - d * d < 1e-15:
        return []
    c1: float = math.cos(first.theta)
    c2: float = math.cos(second.theta)
    u: float = (c1 - c2 * d) / (1.0 - d * d)
    v: float = (c2 - c1 * d) / (1.0 - d * d)
    w_sq: float = (1.0 - (u * u + v * v + 2.0 * u * v * d)) / (1.0 - d * d)
    if w_sq < 0.0:
        return []
    w: float = math.sqrt(w_sq)
    base: np.ndarray = u * x1 + v * x2
    normal: np.ndarray = np.cross(x1, x2)
    return [base + w * normal, base - w * normal]


def _distinct_caps(caps: Sequence[Cap]) -> list[Cap]:
    """Caps with coincident duplicates (same centre, same radius) removed."""
    distinct: list[Cap] = []
    for cap in caps:
        if not any(abs(cap.theta - kept.theta) <= COINCIDENCE_TOLERANCE
                   and cap.center.angle_to(kept.center) <= COINCIDENCE_TOLERANCE for kept in distinct):
            distinct.append(cap)
    return distinct


def covers_by_arrangement(caps: Sequence[Cap]) -> bool:
    """
    Coverage decided from the arrangement of boundary circles.

    An uncovered region is bounded by arcs of boundary circles, each arc
    running between consecutive intersections with the other circles. Every
    arc is probed at its midpoint, pushed outward off its own cap by
    PROBE_OFFSET; a probe outside every cap is a witness of an uncovered
    point. Regions thinner than PROBE_OFFSET go undetected.

    Args:
        caps (Sequence[Cap]): Caps with arbitrary radii.

    Returns:
        bool: True iff the closed caps cover S².
    """
    caps = _distinct_caps(caps)
    if any(cap.theta >= math.pi for cap in caps):
        return True
    circles: list[Cap] = [cap for cap in caps if cap.theta > 0.0]
    if not circles:
        # finitely many points never cover S²
        return False
    for i, cap in enumerate(circles):
        others: list[Cap] = [other for j, other in enumerate(circles) if j != i]
        first, second = _frame(cap.center)
        angles: list[float] = sorted(
            math.atan2(float(point @ second), float(point @ first))
            for other in others for point in circle_intersections(cap, other))
        if not angles:
            probes: list[float] = [0.0]
        else:
            wrapped: list[float] = angles + [angles[0] + 2.0 * math.pi]
            probes = [0.5 * (lo + hi) for lo, hi in zip(wrapped[:-1], wrapped[1:]) if hi - lo > 1e-12]
        center: np.ndarray = cap.center.as_array()
        radius: float = min(cap.theta + PROBE_OFFSET, math.pi)
        for phi in probes:
            probe: UnitVector = UnitVector.from_array(
                math.cos(radius) * center
                + math.sin(radius) * (math.cos(phi) * first + math.sin(phi) * second))
            if not any(other.contains(probe) for other in caps):
                logger.debug(f"Uncovered point {probe.get_all_data()} beside the circle of cap {i}")
                return False
    return True


def covers(caps: Sequence[Cap]) -> bool:
    """
    Whether four closed caps cover S².

    Equal radii use the duality with the minimal enclosing cap of the
    antipodal centres; mixed radii use the boundary arrangement.

    Args:
        caps (Sequence[Cap]): Four caps.

    Returns:
        bool: True iff every point of S² lies in some cap.
    """
    caps = list(caps)
    if len(caps) != CAP_COUNT:
        raise DomainError(f"covers expects {CAP_COUNT} caps, got {len(caps)}", "caps")
    radii: set[float] = {cap.theta for cap in caps}
    if len(radii) == 1:
        return covers_by_duality(PointQuad(*(cap.center for cap in caps)), caps[0].theta)
    return covers_by_arrangement(caps)


def p_monte_carlo(omega: float, n: int, seed: int, threads: int = 1,
                  batch_size: int = DEFAULT_BATCH_SIZE) -> CoverageEstimate:
    """
    Monte Carlo coverage probability from n random configurations.

    Args:
        omega (float): Common cap radius.
        n (int): Number of configurations.
        seed (int): Experiment seed.
        threads (int): Worker threads; does not change the result.
        batch_size (int): Configurations per random substream.

    Returns:
        CoverageEstimate: Estimate with binomial standard error.
    """
    _check_omega(omega)
    counts: list[int] = run_batches(
        n, seed, STREAM_COVERAGE,
        lambda rng, size: int(np.count_nonzero(covers_array(sample_quads(rng, size), omega))),
        threads, batch_size)
    estimate: CoverageEstimate = CoverageEstimate.from_count(omega, sum(counts), n, seed)
    logger.info(f"p({math.degrees(omega):.4f} deg) ~ {estimate.p_hat:.6f} +- {estimate.std_err:.6f} (n={n}, seed={seed})")
    return estimate


def duality_check(omega: float, n: int, seed: int) -> DualityRow:
    """
    Compare the arrangement test against the duality test on n random
    configurations of equal caps.

    Args:
        omega (float): Common cap radius.
        n (int): Number of configurations.
        seed (int): Experiment seed.

    Returns:
        DualityRow: Disagreement counts outside the boundary band.
    """
    _check_omega(omega)
    rng = stream(seed, STREAM_DUALITY, int(round(math.degrees(omega) * 1e6)))
    points: np.ndarray = sample_quads(rng, n)
    margins: np.ndarray = theta_min_array(-points) - (math.pi - omega)
    covering: int = 0
    disagreements: int = 0
    in_band: int = 0
    for row, margin in zip(points, margins):
        if abs(margin) <= BOUNDARY_SLACK:
            in_band += 1
            continue
        caps: list[Cap] = [Cap(UnitVector.from_array(p), omega) for p in row]
        by_arrangement: bool = covers_by_arrangement(caps)
        covering += by_arrangement
        if by_arrangement != bool(margin > 0.0):
            disagreements += 1
            logger.warning(f"Coverage tests disagree at omega={omega!r}: centres {row.tolist()}")
    return DualityRow(omega, n, covering, disagreements, in_band, BOUNDARY_SLACK)
