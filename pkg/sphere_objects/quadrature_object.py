"""
QuadratureSpec: tolerances and depth limits governing every integral.
"""
from dataclasses import dataclass, replace
from typing import Any

from services.exceptions import DomainError


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Adaptive quadrature settings. `table_nodes` is the size of the memoized
    interpolation grid for P{E | theta}.
    """
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    max_subdivisions: int = 2 ** 15
    table_nodes: int = 48

    def __post_init__(self) -> None:
        if not self.abs_tol > 0.0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}", "abs_tol")
        if not self.rel_tol >= 0.0:
            raise DomainError(f"rel_tol must be non-negative, got {self.rel_tol!r}", "rel_tol")
        if self.max_subdivisions < 1:
            raise DomainError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}", "max_subdivisions")
        if self.table_nodes < 4:
            raise DomainError(f"table_nodes must be >= 4, got {self.table_nodes!r}", "table_nodes")

    def inner(self) -> "QuadratureSpec":
        """Spec for a nested integral: one tenth of the outer tolerances."""
        return replace(self, abs_tol=self.abs_tol / 10.0, rel_tol=self.rel_tol / 10.0)

    def target(self, value: float) -> float:
        """Error target for an integral of the given magnitude."""
        return max(self.abs_tol, self.rel_tol * abs(value))

    @classmethod
    def from_config(cls, data: dict[str, Any]) -> "QuadratureSpec":
        """Build a spec from the `quadrature` section of the YAML configuration."""
        return cls(
            abs_tol=float(data.get("abs_tol", 1e-9)),
            rel_tol=float(data.get("rel_tol", 1e-9)),
            max_subdivisions=int(data.get("max_subdivisions", 2 ** 15)),
            table_nodes=int(data.get("table_nodes", 48)),
        )

    def get_all_data(self) -> dict[str, Any]:
        """Get the spec as a dictionary"""
        return {
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "max_subdivisions": self.max_subdivisions,
            "table_nodes": self.table_nodes,
        }


DEFAULT_SPEC: QuadratureSpec = QuadratureSpec()
