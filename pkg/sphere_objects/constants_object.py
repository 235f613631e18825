"""
Named constants of the four-cap problem.
"""
from dataclasses import dataclass, field
from typing import Any
import math


@dataclass(frozen=True)
class Constants:
    """
    omega0 is the largest cap radius with zero coverage probability, theta0 its
    complement; kappa_closed = P{well-centered and acute base}; e_n_closed = E(N).
    """
    omega0: float = field(default_factory=lambda: math.acos(1.0 / 3.0))
    theta0: float = field(default_factory=lambda: math.acos(-1.0 / 3.0))
    kappa_closed: float = 11.0 / 96.0 - 1.0 / (8.0 * math.pi ** 2)
    e_n_closed: float = 11.0 / 3.0 - 4.0 / math.pi ** 2

    def get_all_data(self) -> dict[str, Any]:
        """Get all constants as a dictionary"""
        return {
            "omega0": self.omega0,
            "theta0": self.theta0,
            "kappa_closed": self.kappa_closed,
            "e_n_closed": self.e_n_closed,
        }


CONSTANTS: Constants = Constants()
