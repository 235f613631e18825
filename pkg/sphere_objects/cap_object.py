"""
Cap and SupportResult: circular caps of S² and certified minimal caps.
"""
from dataclasses import dataclass
from typing import Any
import math

from services.exceptions import DomainError
from sphere_objects.vector_object import UnitVector

MEMBERSHIP_SLACK: float = 1e-12


@dataclass(frozen=True)
class Cap:
    """
    Closed cap {Y : angle(center, Y) <= theta}, 0 <= theta <= pi.
    """
    center: UnitVector
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"Cap radius {self.theta!r} outside [0, pi]", "theta")

    def contains(self, point: UnitVector, slack: float = MEMBERSHIP_SLACK) -> bool:
        """Closed membership test with angular slack."""
        return self.center.angle_to(point) <= self.theta + slack

    def complement(self) -> "Cap":
        """The complementary cap sharing the same boundary circle."""
        return Cap(self.center.antipode(), math.pi - self.theta)

    def get_all_data(self) -> dict[str, Any]:
        """Get the cap as a dictionary"""
        return {"center": self.center.get_all_data(), "theta": self.theta}


@dataclass(frozen=True)
class SupportResult:
    """
    Minimal enclosing cap together with the indices of the points on its
    boundary. `tie` marks an antipodal pair, where the centre is a
    deterministic pick from a continuum of optimal centres.
    """
    cap: Cap
    support: tuple[int, ...]
    tie: bool = False

    @property
    def theta(self) -> float:
        """Angular radius of the cap."""
        return self.cap.theta

    def get_all_data(self) -> dict[str, Any]:
        """Get the result as a dictionary"""
        return {"cap": self.cap.get_all_data(), "support": list(self.support), "tie": self.tie}
