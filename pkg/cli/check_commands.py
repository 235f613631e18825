"""Command handlers for the cross-checks."""
import logging
import math

import logManager

from cli.error_handlers import EXIT_FAILURE, EXIT_OK
from config_manager.runtime_config_handler import CliInvocation
from services import bounds, coverage, mc_lab, quad_engine
from services.utils import deg_to_rad, format_degrees, render
from sphere_objects.estimate_object import OpenValue
from sphere_objects.report_object import DominanceReport, DualityRow

logger: logging.Logger = logManager.logger.get_logger(__name__)

DUALITY_OMEGAS_DEG: tuple[float, ...] = (75.0, 84.0, 88.0, 90.0, 100.0, 120.0, 150.0)
DUALITY_N: int = 100_000
DOMINANCE_N: int = 1_000_000
DELTA_THETAS_DEG: tuple[float, ...] = (100.0, 120.0, 150.0, 170.0)
NORMALIZATION_TOLERANCE: float = 1e-6


class CheckCommands:
    """
    Handlers for `check duality|dominance|delta-norm|envelope`. A check that
    fails exits with 1; the envelope check only reports.
    """

    def check(self, invocation: CliInvocation) -> int:
        """Route to the named check."""
        handlers = {
            "duality": self.duality,
            "dominance": self.dominance,
            "delta-norm": self.delta_norm,
            "envelope": self.envelope,
        }
        return handlers[invocation.kind or "duality"](invocation)

    def duality(self, invocation: CliInvocation) -> int:
        """
        Arrangement test against the theta_min test per radius, then 1 - Phi(pi - omega)
        against p(omega) where p is known.
        """
        full: bool = invocation.full
        n: int = invocation.n or DUALITY_N
        omegas: list[float] = [deg_to_rad(d, "omega") for d in (invocation.omega_degs or DUALITY_OMEGAS_DEG)]
        failed: bool = False
        for omega in omegas:
            row: DualityRow = coverage.duality_check(omega, n, invocation.seed)
            print(f"omega={format_degrees(omega)} n={row.n} covering={row.covering} "
                  f"disagreements={row.disagreements} in_band={row.in_band}")
            failed = failed or row.disagreements > 0
        known: list[float] = [omega for omega in omegas if not isinstance(coverage.p_exact(omega), OpenValue)
                              and omega >= 0.5 * math.pi]
        if known:
            results = mc_lab.duality_cdf_check(n, invocation.seed, tuple(math.degrees(o) for o in known),
                                               invocation.threads, invocation.batch_size)
            for omega, estimate in results:
                exact: float = float(coverage.p_exact(omega))
                within: bool = estimate.within(exact, 3.0) or abs(estimate.value - exact) < 1e-12
                print(f"1 - Phi(pi - {format_degrees(omega)}) = {render(estimate.value, full)} "
                      f"+- {render(estimate.std_err, full)} p_exact={render(exact, full)} "
                      f"{'ok' if within else 'OUTSIDE 3 sigma'}")
                failed = failed or not within
        return EXIT_FAILURE if failed else EXIT_OK

    def dominance(self, invocation: CliInvocation) -> int:
        """Empirical F against 4G and 32 kappa G."""
        full: bool = invocation.full
        report: DominanceReport = bounds.dominance_check(invocation.n or DOMINANCE_N, seed=invocation.seed,
                                                         threads=invocation.threads, spec=invocation.spec,
                                                         batch_size=invocation.batch_size)
        print("xi_deg,F_hat,sigma,4G,32kappaG")
        for row in report.rows:
            print(f"{render(math.degrees(row.xi), full)},{render(row.f_hat, full)},{render(row.f_std_err, full)},"
                  f"{render(row.crude, full)},{render(row.refined, full)}")
        print(f"violations: 4G {len(report.crude_violations)}, 32kappaG {len(report.refined_violations)}")
        return EXIT_FAILURE if report.refined_violations else EXIT_OK

    def delta_norm(self, invocation: CliInvocation) -> int:
        """Integral of delta over the acute region (1/2) and of the trivariate mixture (1)."""
        full: bool = invocation.full
        failed: bool = False
        for degrees in invocation.theta_degs or DELTA_THETAS_DEG:
            theta: float = deg_to_rad(degrees, "theta")
            delta_total: float = quad_engine.delta_normalization(theta, invocation.spec)
            mixture_total: float = quad_engine.mixture_normalization(theta, invocation.spec)
            print(f"theta={format_degrees(theta)} delta={render(delta_total, full)} "
                  f"mixture={render(mixture_total, full)}")
            failed = (failed or abs(delta_total - 0.5) > NORMALIZATION_TOLERANCE
                      or abs(mixture_total - 1.0) > NORMALIZATION_TOLERANCE)
        return EXIT_FAILURE if failed else EXIT_OK

    def envelope(self, invocation: CliInvocation) -> int:
        """Where psi_lcv falls below psi, the areas under psi and the one-sided values at pi/2. Reported only."""
        full: bool = invocation.full
        violations = bounds.envelope_check(spec=invocation.spec)
        for theta, envelope, value in violations:
            print(f"theta={format_degrees(theta)} psi_lcv={render(envelope, full)} psi={render(value, full)}")
        print(f"psi_lcv below psi at {len(violations)} grid points")
        left_area, right_area = bounds.psi_areas(invocation.spec)
        print(f"area under psi: [0, 90°] {render(left_area, full)}, (90°, 180°] {render(right_area, full)}")
        left, right = bounds.continuity_probe(spec=invocation.spec)
        print(f"psi at 90° -/+: {render(left, full)} {render(right, full)}")
        return EXIT_OK
