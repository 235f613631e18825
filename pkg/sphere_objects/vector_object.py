"""
UnitVector and PointQuad: the points of S² that carry all the geometry.
"""
from dataclasses import dataclass
from typing import Any, Iterator, Sequence
import math

import numpy as np

from services.exceptions import DegenerateGeometryError, DomainError

NORM_TOLERANCE: float = 1e-12


@dataclass(frozen=True)
class UnitVector:
    """
    A point on the unit sphere. Construction checks the norm; use
    `UnitVector.normalized` to project an arbitrary non-zero vector.
    """
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm_sq: float = self.x * self.x + self.y * self.y + self.z * self.z
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise DomainError(f"UnitVector components must be finite, got {self}", "point")
        if abs(norm_sq - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"UnitVector norm² is {norm_sq!r}, expected 1", "point")

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "UnitVector":
        """
        Build a UnitVector from an arbitrary non-zero vector.

        Args:
            x (float): First component.
            y (float): Second component.
            z (float): Third component.

        Returns:
            UnitVector: The normalized vector.
        """
        norm: float = math.sqrt(x * x + y * y + z * z)
        if norm < NORM_TOLERANCE:
            raise DegenerateGeometryError("Cannot normalize a zero vector")
        return cls(x / norm, y / norm, z / norm)

    @classmethod
    def from_array(cls, values: Sequence[float] | np.ndarray) -> "UnitVector":
        """Normalize a length-3 array into a UnitVector."""
        return cls.normalized(float(values[0]), float(values[1]), float(values[2]))

    def as_array(self) -> np.ndarray:
        """Return the components as a numpy array of shape (3,)."""
        return np.array([self.x, self.y, self.z], dtype=float)

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.y, self.z))

    def dot(self, other: "UnitVector") -> float:
        """Inner product."""
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "UnitVector") -> tuple[float, float, float]:
        """Cross product as a plain tuple (not a unit vector in general)."""
        return (self.y * other.z - self.z * other.y,
                self.z * other.x - self.x * other.z,
                self.x * other.y - self.y * other.x)

    def angle_to(self, other: "UnitVector") -> float:
        """Geodesic distance via atan2(|u×v|, u·v); accurate near 0 and π."""
        cx, cy, cz = self.cross(other)
        return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), self.dot(other))

    def antipode(self) -> "UnitVector":
        """The diametrically opposite point."""
        return UnitVector(-self.x, -self.y, -self.z)

    def get_all_data(self) -> dict[str, Any]:
        """Get the components as a dictionary"""
        return {"x": self.x, "y": self.y, "z": self.z}


@dataclass(frozen=True)
class PointQuad:
    """
    Four points of S²: tetrahedron ABCD with base ABC and apex D.
    """
    a: UnitVector
    b: UnitVector
    c: UnitVector
    d: UnitVector

    @classmethod
    def from_array(cls, values: np.ndarray) -> "PointQuad":
        """Build a quad from an array of shape (4, 3)."""
        if np.shape(values) != (4, 3):
            raise DomainError(f"PointQuad needs a (4, 3) array, got shape {np.shape(values)}", "points")
        return cls(*(UnitVector.from_array(row) for row in values))

    def points(self) -> tuple[UnitVector, UnitVector, UnitVector, UnitVector]:
        """The four vertices in order A, B, C, D."""
        return (self.a, self.b, self.c, self.d)

    def as_array(self) -> np.ndarray:
        """Return the vertices as an array of shape (4, 3)."""
        return np.array([p.as_array() for p in self.points()])

    def antipodes(self) -> "PointQuad":
        """The quad of antipodal points."""
        return PointQuad(*(p.antipode() for p in self.points()))

    def get_all_data(self) -> dict[str, Any]:
        """Get all vertices as a dictionary"""
        return {name: p.get_all_data() for name, p in zip("abcd", self.points())}
