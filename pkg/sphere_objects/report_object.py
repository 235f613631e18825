"""
Report objects assembled by the bounds and mc_lab services.
"""
from dataclasses import dataclass, field
from typing import Any, Optional

from sphere_objects.estimate_object import Estimate, OpenValue


@dataclass(frozen=True)
class TetraReport:
    """
    Statistics of n random tetrahedra: well-centeredness, acuteness of the
    base, the event E and the number N of acute faces of well-centered quads.
    """
    n: int
    seed: int
    p_wc: Estimate
    p_acute: Estimate
    kappa_hat: Estimate
    n_counts: dict[int, int]
    e_n_hat: Optional[Estimate]
    min_n: Optional[int]
    implication_violations: int = 0
    all_acute_quads: int = 0
    face_identity_mismatches: int = 0

    @property
    def well_centered(self) -> int:
        """Number of well-centered quads."""
        return sum(self.n_counts.values())

    def get_all_data(self) -> dict[str, Any]:
        """Get the report as a dictionary"""
        return {
            "n": self.n,
            "seed": self.seed,
            "p_wc": self.p_wc.get_all_data(),
            "p_acute": self.p_acute.get_all_data(),
            "kappa_hat": self.kappa_hat.get_all_data(),
            "n_counts": dict(self.n_counts),
            "e_n_hat": self.e_n_hat.get_all_data() if self.e_n_hat else None,
            "min_n": self.min_n,
            "implication_violations": self.implication_violations,
            "all_acute_quads": self.all_acute_quads,
            "face_identity_mismatches": self.face_identity_mismatches,
        }


@dataclass(frozen=True)
class BoundReport:
    """
    Lower bounds q, q_lcv, Gilbert's upper bound and the exact value (or OPEN)
    at one cap radius. Bounds outside their domain are None.
    """
    omega: float
    q: Optional[float]
    q_lcv: Optional[float]
    gilbert: float
    p_exact_or_open: float | OpenValue

    def get_all_data(self) -> dict[str, Any]:
        """Get the report as a dictionary"""
        exact: float | str = str(self.p_exact_or_open) if isinstance(self.p_exact_or_open, OpenValue) \
            else self.p_exact_or_open
        return {"omega": self.omega, "q": self.q, "q_lcv": self.q_lcv,
                "gilbert": self.gilbert, "p_exact": exact}


@dataclass(frozen=True)
class DominanceRow:
    """Comparison of the empirical F against 4G and 32 kappa G at one xi."""
    xi: float
    f_hat: float
    f_std_err: float
    g_cdf: float
    crude: float
    refined: float

    @property
    def crude_margin(self) -> float:
        """4G - F_hat."""
        return self.crude - self.f_hat

    @property
    def refined_margin(self) -> float:
        """32 kappa G - F_hat."""
        return self.refined - self.f_hat

    def violates(self, bound: float, sigmas: float = 3.0) -> bool:
        """True when the bound falls below F_hat by more than `sigmas` standard errors."""
        return bound < self.f_hat - sigmas * self.f_std_err


@dataclass(frozen=True)
class DominanceReport:
    """Dominance of F by c*G over a grid of xi values."""
    n: int
    seed: int
    rows: list[DominanceRow] = field(default_factory=list)

    @property
    def crude_violations(self) -> list[DominanceRow]:
        """Rows where 4G < F_hat - 3 sigma."""
        return [row for row in self.rows if row.violates(row.crude)]

    @property
    def refined_violations(self) -> list[DominanceRow]:
        """Rows where 32 kappa G < F_hat - 3 sigma."""
        return [row for row in self.rows if row.violates(row.refined)]

    def get_all_data(self) -> dict[str, Any]:
        """Get the report as a dictionary"""
        return {
            "n": self.n,
            "seed": self.seed,
            "rows": [{"xi": r.xi, "f_hat": r.f_hat, "f_std_err": r.f_std_err, "G": r.g_cdf,
                      "crude_margin": r.crude_margin, "refined_margin": r.refined_margin}
                     for r in self.rows],
            "crude_violations": len(self.crude_violations),
            "refined_violations": len(self.refined_violations),
        }


@dataclass(frozen=True)
class DualityRow:
    """
    Agreement of the arrangement test and the theta_min duality test at one
    cap radius. Instances within `band` of the duality threshold are skipped.
    """
    omega: float
    n: int
    covering: int
    disagreements: int
    in_band: int
    band: float = 1e-9

    def get_all_data(self) -> dict[str, Any]:
        """Get the row as a dictionary"""
        return {"omega": self.omega, "n": self.n, "covering": self.covering,
                "disagreements": self.disagreements, "in_band": self.in_band, "band": self.band}


@dataclass(frozen=True)
class FitReport:
    """Pearson chi-square comparison of a histogram against a distribution."""
    statistic: float
    dof: int
    p_value: float
    bins_used: int

    def get_all_data(self) -> dict[str, Any]:
        """Get the report as a dictionary"""
        return {"statistic": self.statistic, "dof": self.dof,
                "p_value": self.p_value, "bins_used": self.bins_used}
