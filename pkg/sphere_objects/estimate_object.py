"""
Monte Carlo estimates and the OPEN marker for the unsolved coverage interval.
"""
from dataclasses import dataclass
from typing import Any
import math

from services.exceptions import DomainError


class OpenValue:
    """
    Typed marker for p(omega) on (omega0, pi/2), where no closed form is known.
    Not an error and not NaN.
    """
    _instance: "OpenValue | None" = None

    def __new__(cls) -> "OpenValue":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OPEN"

    def __str__(self) -> str:
        return "OPEN"

    def __bool__(self) -> bool:
        return False


OPEN: OpenValue = OpenValue()


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo value with its standard error and sample count."""
    value: float
    std_err: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"Estimate needs n >= 1, got {self.n}", "n")
        if not self.std_err >= 0.0:
            raise DomainError(f"Standard error must be non-negative, got {self.std_err!r}", "std_err")

    @classmethod
    def from_count(cls, hits: int, n: int) -> "Estimate":
        """Binomial proportion estimate."""
        p: float = hits / n
        return cls(p, math.sqrt(p * (1.0 - p) / n), n)

    @classmethod
    def from_moments(cls, total: float, total_sq: float, n: int) -> "Estimate":
        """Sample mean with standard error from the first two raw sums."""
        mean: float = total / n
        var: float = max(0.0, total_sq / n - mean * mean)
        correction: float = n / (n - 1) if n > 1 else 0.0
        return cls(mean, math.sqrt(var * correction / n), n)

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        """True when target lies within `sigmas` standard errors."""
        return abs(self.value - target) <= sigmas * self.std_err

    def get_all_data(self) -> dict[str, Any]:
        """Get the estimate as a dictionary"""
        return {"value": self.value, "std_err": self.std_err, "n": self.n}


@dataclass(frozen=True)
class CoverageEstimate:
    """Simulated coverage probability for one cap radius."""
    omega: float
    p_hat: float
    std_err: float
    n: int
    seed: int

    @classmethod
    def from_count(cls, omega: float, hits: int, n: int, seed: int) -> "CoverageEstimate":
        """Build the estimate from the number of covering configurations."""
        p_hat: float = hits / n
        return cls(omega, p_hat, math.sqrt(p_hat * (1.0 - p_hat) / n), n, seed)

    def get_all_data(self) -> dict[str, Any]:
        """Get the estimate as a dictionary"""
        return {"omega": self.omega, "p_hat": self.p_hat, "std_err": self.std_err,
                "n": self.n, "seed": self.seed}
