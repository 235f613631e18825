"""
Exact spherical geometry: distances, caps, triangle and tetrahedron predicates,
areas and uniform sampling. Scalar operations work on UnitVector objects; the
`*_array` variants work on numpy arrays whose last axis has length 3.
"""
import logging
import math

import numpy as np

import logManager

from services.exceptions import (AmbiguousSideError, AntipodalPairError,
                                 DegenerateGeometryError, DomainError)
from sphere_objects.cap_object import Cap
from sphere_objects.vector_object import PointQuad, UnitVector

logger: logging.Logger = logManager.logger.get_logger(__name__)

DEGENERACY_TOLERANCE: float = 1e-12

# Faces of a quad (a, b, c, d) as index triples, each followed by the opposite vertex.
FACES: tuple[tuple[int, int, int, int], ...] = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 3, 1), (1, 2, 3, 0))


def angular_distance(u: UnitVector, v: UnitVector) -> float:
    """
    Geodesic distance between two points of S².

    Args:
        u (UnitVector): First point.
        v (UnitVector): Second point.

    Returns:
        float: Angle in [0, pi], from atan2(|u x v|, u . v).
    """
    return u.angle_to(v)


def angular_distance_array(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorised angular distance over the last axis."""
    cross: np.ndarray = np.cross(u, v)
    return np.arctan2(np.linalg.norm(cross, axis=-1), np.einsum("...i,...i->...", u, v))


def _from_uniforms(u: np.ndarray) -> np.ndarray:
    """Map pairs of U[0,1) variates to S²: z uniform on [-1, 1], azimuth uniform."""
    z: np.ndarray = 2.0 * u[..., 0] - 1.0
    phi: np.ndarray = 2.0 * math.pi * u[..., 1]
    s: np.ndarray = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack((s * np.cos(phi), s * np.sin(phi), z), axis=-1)


def sample_uniform(rng: np.random.Generator) -> UnitVector:
    """
    Draw one point uniformly from S².

    Args:
        rng (np.random.Generator): Seeded generator; consumes two doubles.

    Returns:
        UnitVector: The sampled point.
    """
    x, y, z = _from_uniforms(rng.random(2))
    return UnitVector.normalized(float(x), float(y), float(z))


def sample_uniform_array(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """
    Draw an array of uniform points; consumes the stream in the same order as
    repeated `sample_uniform` calls.

    Args:
        rng (np.random.Generator): Seeded generator.
        shape (tuple[int, ...]): Leading shape, e.g. (n, 4) for n quads.

    Returns:
        np.ndarray: Array of shape `shape + (3,)`.
    """
    return _from_uniforms(rng.random(tuple(shape) + (2,)))


def _squared_sides(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    side_a: np.ndarray = np.sum((b - c) ** 2, axis=-1)
    side_b: np.ndarray = np.sum((c - a) ** 2, axis=-1)
    side_c: np.ndarray = np.sum((a - b) ** 2, axis=-1)
    return side_a, side_b, side_c


def is_acute_chordal(a: UnitVector, b: UnitVector, c: UnitVector) -> bool:
    """
    Whether the planar triangle on three sphere points has three acute angles.

    Args:
        a (UnitVector): First vertex.
        b (UnitVector): Second vertex.
        c (UnitVector): Third vertex.

    Returns:
        bool: True iff every angle is strictly below pi/2.
    """
    pa, pb, pc = a.as_array(), b.as_array(), c.as_array()
    if np.linalg.norm(np.cross(pb - pa, pc - pa)) < DEGENERACY_TOLERANCE:
        raise DegenerateGeometryError("Triangle is degenerate (coincident or collinear vertices)")
    return bool(acute_mask(pa, pb, pc))


def acute_mask(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorised acuteness test; degenerate triangles come out False."""
    side_a, side_b, side_c = _squared_sides(a, b, c)
    return (side_a + side_b > side_c) & (side_b + side_c > side_a) & (side_c + side_a > side_b)


def _triple(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.einsum("...i,...i->...", u, np.cross(v, w))


def orientation(p: np.ndarray, q: np.ndarray, r: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Signed volume determinant det[q - p, r - p, s - p]."""
    return _triple(q - p, r - p, s - p)


def well_centered_mask(points: np.ndarray) -> np.ndarray:
    """
    Vectorised well-centeredness for an array of quads of shape (..., 4, 3).
    Origin on a face (|det| < 1e-12) counts as not well-centered.
    """
    a, b, c, d = points[..., 0, :], points[..., 1, :], points[..., 2, :], points[..., 3, :]
    origin: np.ndarray = np.zeros_like(a)
    full: np.ndarray = orientation(a, b, c, d)
    dets: list[np.ndarray] = [
        orientation(origin, b, c, d),
        orientation(a, origin, c, d),
        orientation(a, b, origin, d),
        orientation(a, b, c, origin),
    ]
    inside: np.ndarray = np.abs(full) >= DEGENERACY_TOLERANCE
    for det in dets:
        inside &= (np.abs(det) >= DEGENERACY_TOLERANCE) & (np.sign(det) == np.sign(full))
    return inside


def is_well_centered(q: PointQuad) -> bool:
    """
    Whether the tetrahedron ABCD contains the origin strictly inside.

    Args:
        q (PointQuad): The four vertices.

    Returns:
        bool: True iff all four orientation determinants share the sign of the full one.
    """
    return bool(well_centered_mask(q.as_array()))


def in_spherical_triangle(p: UnitVector, a: UnitVector, b: UnitVector, c: UnitVector) -> bool:
    """Whether p lies strictly inside the minor-arc spherical triangle abc."""
    pa, pb, pc, pp = a.as_array(), b.as_array(), c.as_array(), p.as_array()
    for u, v, w in ((pa, pb, pc), (pb, pc, pa), (pc, pa, pb)):
        side: float = float(_triple(u, v, w))
        point_side: float = float(_triple(u, v, pp))
        if abs(point_side) < DEGENERACY_TOLERANCE or side * point_side <= 0.0:
            return False
    return True


def circumcap_containing(a: UnitVector, b: UnitVector, c: UnitVector, d: UnitVector) -> Cap:
    """
    The cap bounded by the circumcircle of abc on the side containing d.

    Args:
        a (UnitVector): First circle point.
        b (UnitVector): Second circle point.
        c (UnitVector): Third circle point.
        d (UnitVector): Point selecting the side.

    Returns:
        Cap: Cap with a, b, c on its boundary and d inside; theta in (0, pi).
    """
    pa, pb, pc = a.as_array(), b.as_array(), c.as_array()
    normal: np.ndarray = np.cross(pb - pa, pc - pa)
    norm: float = float(np.linalg.norm(normal))
    if norm < DEGENERACY_TOLERANCE:
        raise DegenerateGeometryError("Circumcircle undefined: points are coincident or collinear")
    normal /= norm
    offset: float = float(normal @ pa)
    side: float = float(normal @ d.as_array()) - offset
    if abs(side) < DEGENERACY_TOLERANCE:
        raise AmbiguousSideError("Apex lies on the circumcircle plane; both caps contain it")
    center: UnitVector = UnitVector.from_array(normal if side > 0.0 else -normal)
    return Cap(center, angular_distance(center, a))


def circumcap_radius_array(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Vectorised radius of the circumcap of abc containing d; NaN where degenerate."""
    normal: np.ndarray = np.cross(b - a, c - a)
    norm: np.ndarray = np.linalg.norm(normal, axis=-1)
    valid: np.ndarray = norm >= DEGENERACY_TOLERANCE
    unit: np.ndarray = normal / np.where(valid, norm, 1.0)[..., None]
    offset: np.ndarray = np.einsum("...i,...i->...", unit, a)
    side: np.ndarray = np.einsum("...i,...i->...", unit, d) - offset
    valid &= np.abs(side) >= DEGENERACY_TOLERANCE
    center: np.ndarray = np.where((side > 0.0)[..., None], unit, -unit)
    return np.where(valid, angular_distance_array(center, a), np.nan)


def spherical_angle(vertex: UnitVector, p: UnitVector, q: UnitVector) -> float:
    """
    Angle at `vertex` between the great-circle arcs towards p and q.

    Args:
        vertex (UnitVector): Corner of the angle.
        p (UnitVector): End of the first arc.
        q (UnitVector): End of the second arc.

    Returns:
        float: Dihedral angle in [0, pi].
    """
    v: np.ndarray = vertex.as_array()
    t1: np.ndarray = p.as_array() - (p.dot(vertex)) * v
    t2: np.ndarray = q.as_array() - (q.dot(vertex)) * v
    if np.linalg.norm(t1) < DEGENERACY_TOLERANCE or np.linalg.norm(t2) < DEGENERACY_TOLERANCE:
        raise DegenerateGeometryError("Arc direction undefined at a coincident or antipodal vertex")
    return math.atan2(float(np.linalg.norm(np.cross(t1, t2))), float(t1 @ t2))


def spherical_angle_array(vertex: np.ndarray, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorised spherical_angle; no degeneracy checks."""
    t1: np.ndarray = p - np.einsum("...i,...i->...", p, vertex)[..., None] * vertex
    t2: np.ndarray = q - np.einsum("...i,...i->...", q, vertex)[..., None] * vertex
    return np.arctan2(np.linalg.norm(np.cross(t1, t2), axis=-1), np.einsum("...i,...i->...", t1, t2))


def spherical_triangle_area_array(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorised Girard area for non-degenerate triangles."""
    excess: np.ndarray = (spherical_angle_array(a, b, c) + spherical_angle_array(b, c, a)
                          + spherical_angle_array(c, a, b) - math.pi)
    return np.clip(excess, 0.0, 2.0 * math.pi)


def _check_triangle(a: UnitVector, b: UnitVector, c: UnitVector) -> bool:
    """Raise on antipodal pairs; return False when two vertices coincide."""
    for u, v in ((a, b), (b, c), (c, a)):
        if np.linalg.norm(u.as_array() + v.as_array()) < DEGENERACY_TOLERANCE:
            raise AntipodalPairError("Antipodal vertices: the minor arc is undefined")
    for u, v in ((a, b), (b, c), (c, a)):
        if np.linalg.norm(u.as_array() - v.as_array()) < DEGENERACY_TOLERANCE:
            return False
    return True


def spherical_triangle_area(a: UnitVector, b: UnitVector, c: UnitVector) -> float:
    """
    Area of the minor-arc spherical triangle by Girard's excess of the dihedral angles.

    Args:
        a (UnitVector): First vertex.
        b (UnitVector): Second vertex.
        c (UnitVector): Third vertex.

    Returns:
        float: Area in steradians, in [0, 2 pi].
    """
    if not _check_triangle(a, b, c):
        return 0.0
    excess: float = (spherical_angle(a, b, c) + spherical_angle(b, c, a)
                     + spherical_angle(c, a, b) - math.pi)
    return min(2.0 * math.pi, max(0.0, excess))


def spherical_triangle_area_lhuilier(a: UnitVector, b: UnitVector, c: UnitVector) -> float:
    """Area by L'Huilier's semiperimeter formula; cross-check for the Girard value."""
    if not _check_triangle(a, b, c):
        return 0.0
    x: float = angular_distance(b, c)
    y: float = angular_distance(c, a)
    z: float = angular_distance(a, b)
    s: float = 0.5 * (x + y + z)
    product: float = (math.tan(0.5 * s) * math.tan(0.5 * (s - x))
                      * math.tan(0.5 * (s - y)) * math.tan(0.5 * (s - z)))
    return 4.0 * math.atan(math.sqrt(max(0.0, product)))


def arccot_negative_branch(x: float) -> float:
    """
    arccot on x <= 0 with values in [-pi/2, 0): arctan(1/x) for x < 0 and -pi/2 at 0,
    written as -pi/2 - arctan(x) so it stays continuous through rounding at x = 0.
    """
    return -0.5 * math.pi - math.atan(x)


def max_equilateral_area(theta: float) -> float:
    """
    Area of the equilateral spherical triangle inscribed in the circle of
    spherical radius theta: -6 arccot(sqrt(3) cos theta) - pi.

    Args:
        theta (float): Circle radius in [pi/2, pi].

    Returns:
        float: Area in steradians; 2 pi at pi/2, pi at theta0, 0 at pi.
    """
    if not 0.5 * math.pi <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [pi/2, pi]", "theta")
    return -6.0 * arccot_negative_branch(math.sqrt(3.0) * math.cos(theta)) - math.pi


def point_on_circle(theta: float, azimuth: float) -> UnitVector:
    """Point at height cos(theta) and the given azimuth on the circle about the north pole."""
    r: float = math.sin(theta)
    return UnitVector.normalized(r * math.cos(azimuth), r * math.sin(azimuth), math.cos(theta))


def points_on_circle(theta: float, azimuth: np.ndarray) -> np.ndarray:
    """Vectorised point_on_circle, shape azimuth.shape + (3,)."""
    azimuth = np.asarray(azimuth, dtype=float)
    r: float = math.sin(theta)
    return np.stack((r * np.cos(azimuth), r * np.sin(azimuth), np.full_like(azimuth, math.cos(theta))), axis=-1)
