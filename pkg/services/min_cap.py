"""
Minimal enclosing spherical cap of up to four points.

The optimum is supported by one, two or three points, so for n <= 4 it is
found by enumerating every single, pair and triple candidate and keeping the
smallest cap that contains all points. Radii above pi/2 are handled the same
way as small ones.
"""
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence
import logging
import math

import numpy as np

import logManager

from services.exceptions import DegenerateGeometryError, DomainError
from services.geom_core import DEGENERACY_TOLERANCE, angular_distance, angular_distance_array
from sphere_objects.cap_object import Cap, SupportResult
from sphere_objects.vector_object import PointQuad, UnitVector

logger: logging.Logger = logManager.logger.get_logger(__name__)

FEASIBILITY_SLACK: float = 1e-9
MAX_POINTS: int = 4

PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(4), 2))
TRIPLES: tuple[tuple[int, int, int], ...] = tuple(combinations(range(4), 3))


def _feasible(cap: Cap, points: Sequence[UnitVector]) -> bool:
    return all(cap.contains(p, FEASIBILITY_SLACK) for p in points)


def _perpendicular(p: UnitVector) -> UnitVector:
    """Unit vector orthogonal to p: the first coordinate axis least aligned with p, projected."""
    components: list[float] = [abs(c) for c in p]
    axis: int = components.index(min(components))
    e: np.ndarray = np.zeros(3)
    e[axis] = 1.0
    return UnitVector.from_array(e - (p.dot(UnitVector.from_array(e))) * p.as_array())


def _antipodal_tie(points: Sequence[UnitVector]) -> Optional[SupportResult]:
    for i, j in combinations(range(len(points)), 2):
        if np.linalg.norm(points[i].as_array() + points[j].as_array()) < DEGENERACY_TOLERANCE:
            center: UnitVector = _perpendicular(points[i])
            return SupportResult(Cap(center, 0.5 * math.pi), (i, j), tie=True)
    return None


def _candidates(points: Sequence[UnitVector]):
    """Yield (cap, support) candidates in order of support size."""
    for i, p in enumerate(points):
        yield Cap(p, 0.0), (i,)
    for i, j in combinations(range(len(points)), 2):
        mid: np.ndarray = points[i].as_array() + points[j].as_array()
        if np.linalg.norm(mid) < DEGENERACY_TOLERANCE:
            continue
        center: UnitVector = UnitVector.from_array(mid)
        yield Cap(center, angular_distance(center, points[i])), (i, j)
    for i, j, k in combinations(range(len(points)), 3):
        pi, pj, pk = points[i].as_array(), points[j].as_array(), points[k].as_array()
        normal: np.ndarray = np.cross(pj - pi, pk - pi)
        if np.linalg.norm(normal) < DEGENERACY_TOLERANCE:
            continue
        center = UnitVector.from_array(normal)
        radius: float = angular_distance(center, points[i])
        yield Cap(center, radius), (i, j, k)
        yield Cap(center.antipode(), math.pi - radius), (i, j, k)


def min_enclosing_cap(points: Sequence[UnitVector]) -> SupportResult:
    """
    Smallest closed cap containing 1 to 4 points.

    Args:
        points (Sequence[UnitVector]): The points.

    Returns:
        SupportResult: The cap and the indices of the points that determine it.
            An antipodal pair without a tie-breaking third point gives radius
            pi/2 with a fixed perpendicular centre and `tie=True`.
    """
    points = list(points)
    if not points:
        raise DomainError("min_enclosing_cap needs at least one point", "points")
    if len(points) > MAX_POINTS:
        raise DomainError(f"min_enclosing_cap handles at most {MAX_POINTS} points, got {len(points)}", "points")

    best: Optional[SupportResult] = None
    for cap, support in _candidates(points):
        if best is not None and cap.theta >= best.theta:
            continue
        if _feasible(cap, points):
            best = SupportResult(cap, support)

    if best is None:
        best = _antipodal_tie(points)
        if best is None:
            raise DegenerateGeometryError(f"No enclosing cap candidate is feasible for {len(points)} points")
        logger.debug(f"Antipodal tie, support {best.support}")
    return best


def theta_min(q: PointQuad) -> float:
    """
    Angular radius of the minimal cap containing the four points of a quad.

    Args:
        q (PointQuad): The quad.

    Returns:
        float: theta_min in [0, pi].
    """
    return min_enclosing_cap(q.points()).theta


def _keep_feasible(best: np.ndarray, points: np.ndarray, center: np.ndarray,
                   radius: np.ndarray, valid: np.ndarray) -> None:
    distances: np.ndarray = angular_distance_array(center[:, None, :], points)
    feasible: np.ndarray = valid & np.all(distances <= radius[:, None] + FEASIBILITY_SLACK, axis=-1)
    np.minimum(best, np.where(feasible, radius, np.inf), out=best)


def theta_min_array(points: np.ndarray) -> np.ndarray:
    """
    Vectorised theta_min for an array of quads.

    Args:
        points (np.ndarray): Array of shape (n, 4, 3).

    Returns:
        np.ndarray: theta_min per quad, shape (n,).
    """
    points = np.asarray(points, dtype=float)
    best: np.ndarray = np.full(points.shape[0], np.inf)

    for i, j in PAIRS:
        mid: np.ndarray = points[:, i] + points[:, j]
        norm: np.ndarray = np.linalg.norm(mid, axis=-1)
        valid: np.ndarray = norm >= DEGENERACY_TOLERANCE
        center: np.ndarray = mid / np.where(valid, norm, 1.0)[:, None]
        _keep_feasible(best, points, center, angular_distance_array(center, points[:, i]), valid)

    for i, j, k in TRIPLES:
        normal: np.ndarray = np.cross(points[:, j] - points[:, i], points[:, k] - points[:, i])
        norm = np.linalg.norm(normal, axis=-1)
        valid = norm >= DEGENERACY_TOLERANCE
        center = normal / np.where(valid, norm, 1.0)[:, None]
        radius: np.ndarray = angular_distance_array(center, points[:, i])
        _keep_feasible(best, points, center, radius, valid)
        _keep_feasible(best, points, -center, math.pi - radius, valid)

    # coincident or antipodal configurations
    for index in np.flatnonzero(~np.isfinite(best)):
        best[index] = theta_min(PointQuad.from_array(points[index]))
    return best


@lru_cache(maxsize=8)
def fibonacci_lattice(count: int) -> np.ndarray:
    """
    Near-uniform lattice of `count` points on S².

    Args:
        count (int): Number of points.

    Returns:
        np.ndarray: Array of shape (count, 3); treat as read-only.
    """
    index: np.ndarray = np.arange(count, dtype=float)
    z: np.ndarray = 1.0 - (2.0 * index + 1.0) / count
    phi: np.ndarray = index * math.pi * (3.0 - math.sqrt(5.0))
    s: np.ndarray = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    lattice: np.ndarray = np.stack((s * np.cos(phi), s * np.sin(phi), z), axis=-1)
    lattice.setflags(write=False)
    return lattice


def brute_force_cap(points: Sequence[UnitVector], grid_resolution: float) -> Cap:
    """
    Grid-search oracle for the minimal enclosing cap.

    Scans a Fibonacci lattice dense enough that every point of S² is within
    `grid_resolution` of a lattice centre.

    Args:
        points (Sequence[UnitVector]): The points.
        grid_resolution (float): Angular resolution in radians, > 0.

    Returns:
        Cap: Best lattice centre and its max distance to the points.
    """
    if not grid_resolution > 0.0:
        raise DomainError(f"grid_resolution must be positive, got {grid_resolution!r}", "grid_resolution")
    count: int = max(16, math.ceil(16.0 * math.pi / grid_resolution ** 2))
    lattice: np.ndarray = fibonacci_lattice(count)
    targets: np.ndarray = np.array([p.as_array() for p in points])
    worst: np.ndarray = angular_distance_array(lattice[:, None, :], targets[None, :, :]).max(axis=1)
    best: int = int(np.argmin(worst))
    logger.debug(f"Brute force scan over {count} centres, best radius {worst[best]:.6f}")
    return Cap(UnitVector.from_array(lattice[best]), float(min(math.pi, worst[best])))
