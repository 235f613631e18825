"""
TrianglePolar: an inscribed triangle described by two sides or two angles
on a circle of radius r = sin(theta).
"""
from dataclasses import dataclass
from typing import Any, Optional
import math

from services.exceptions import DomainError


@dataclass(frozen=True)
class TrianglePolar:
    """
    Chord lengths a, b (opposite the inscribed angles alpha, beta) of a
    triangle inscribed in the circle of spherical radius theta.
    """
    a: float
    b: float
    theta: float
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        r: float = self.r
        if r <= 0.0:
            raise DomainError(f"Circle radius sin({self.theta!r}) must be positive", "theta")
        if not (0.0 < self.a < 2.0 * r and 0.0 < self.b < 2.0 * r):
            raise DomainError(f"Sides ({self.a!r}, {self.b!r}) must lie in (0, 2r) with r={r!r}", "a")
        if self.alpha is not None and self.beta is not None:
            if not (0.0 < self.alpha < math.pi and 0.0 < self.beta < math.pi
                    and self.alpha + self.beta < math.pi):
                raise DomainError(f"Angles ({self.alpha!r}, {self.beta!r}) outside the triangle domain", "alpha")

    @property
    def r(self) -> float:
        """Circumradius of the chordal triangle."""
        return math.sin(self.theta)

    @classmethod
    def from_angles(cls, alpha: float, beta: float, theta: float) -> "TrianglePolar":
        """Populate both charts from the inscribed angles, using a = 2r sin(alpha)."""
        r: float = math.sin(theta)
        return cls(2.0 * r * math.sin(alpha), 2.0 * r * math.sin(beta), theta, alpha, beta)

    @classmethod
    def from_sides_acute(cls, a: float, b: float, theta: float) -> "TrianglePolar":
        """Populate both charts from the sides, taking the acute branch alpha, beta < pi/2."""
        r: float = math.sin(theta)
        alpha: float = math.asin(min(1.0, a / (2.0 * r)))
        beta: float = math.asin(min(1.0, b / (2.0 * r)))
        return cls(a, b, theta, alpha, beta)

    @property
    def gamma(self) -> Optional[float]:
        """The third inscribed angle, when the angle chart is populated."""
        if self.alpha is None or self.beta is None:
            return None
        return math.pi - self.alpha - self.beta

    def get_all_data(self) -> dict[str, Any]:
        """Get both charts as a dictionary"""
        return {"a": self.a, "b": self.b, "theta": self.theta, "r": self.r,
                "alpha": self.alpha, "beta": self.beta}
