"""
This module defines the CliInvocation dataclass.
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Optional

from config_manager.config_handler import Config
from services.exceptions import DomainError
from sphere_objects.quadrature_object import DEFAULT_SPEC, QuadratureSpec


@dataclass
class CliInvocation:
    """
    One parsed command line with the configuration defaults filled in.
    Angles stay in degrees here; handlers convert them through services.utils.deg_to_rad.
    """
    subcommand: str
    kind: Optional[str] = None
    omega_deg: Optional[float] = None
    theta_deg: Optional[float] = None
    omega_degs: list[float] = field(default_factory=list)
    theta_degs: list[float] = field(default_factory=list)
    n: Optional[int] = None
    seed: int = 0
    bins: Optional[int] = None
    out: Optional[str] = None
    method: Optional[str] = None
    chart: Optional[str] = None
    grid: Optional[int] = None
    mc: Optional[int] = None
    thresholds: bool = False
    threads: int = 1
    batch_size: int = 65536
    full: bool = False
    debug: bool = False
    spec: QuadratureSpec = DEFAULT_SPEC

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}", "seed")
        if self.threads < 1:
            raise DomainError(f"threads must be >= 1, got {self.threads}", "threads")
        if self.n is not None and self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}", "n")

    @classmethod
    def populate(cls, args: argparse.Namespace, config: Config) -> "CliInvocation":
        """
        Merge parsed arguments with the loaded configuration. Explicit flags and
        environment values (already applied to args) win over the YAML file.

        Args:
            args (argparse.Namespace): Output of parse_arguments.
            config (Config): Loaded configuration.

        Returns:
            CliInvocation: The invocation.
        """
        monte_carlo: dict[str, Any] = config.section("monte_carlo")
        omega_deg = getattr(args, "omega_deg", None)
        theta_deg = getattr(args, "theta_deg", None)
        kind: Optional[str] = getattr(args, "kind", None) or getattr(args, "action", None)
        bins: Optional[int] = getattr(args, "bins", None)
        if args.subcommand == "hist" and bins is None:
            bins = int(config.section("histogram")["bins"])
        return cls(
            subcommand=args.subcommand,
            kind=kind,
            omega_deg=omega_deg if not isinstance(omega_deg, list) else None,
            theta_deg=theta_deg if not isinstance(theta_deg, list) else None,
            omega_degs=omega_deg if isinstance(omega_deg, list) else [],
            theta_degs=theta_deg if isinstance(theta_deg, list) else [],
            n=getattr(args, "n", None),
            seed=args.seed if args.seed is not None else int(monte_carlo["seed"]),
            bins=bins,
            out=getattr(args, "out", None),
            method=getattr(args, "method", None),
            chart=getattr(args, "chart", None),
            grid=getattr(args, "grid", None),
            mc=getattr(args, "mc", None),
            thresholds=bool(getattr(args, "thresholds", False)),
            threads=args.threads if args.threads is not None else int(monte_carlo["threads"]),
            batch_size=int(monte_carlo["batch_size"]),
            full=args.full,
            debug=args.debug,
            spec=config.quadrature_spec(),
        )

    def get_all_data(self) -> dict[str, Any]:
        """Get the invocation as a dictionary"""
        return {
            "subcommand": self.subcommand,
            "kind": self.kind,
            "omega_deg": self.omega_deg,
            "theta_deg": self.theta_deg,
            "n": self.n,
            "seed": self.seed,
            "bins": self.bins,
            "out": self.out,
            "threads": self.threads,
            "batch_size": self.batch_size,
            "full": self.full,
            "spec": self.spec.get_all_data(),
        }
