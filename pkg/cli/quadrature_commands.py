"""Command handlers for kappa, P{E | theta} and the distribution of theta_abc."""
import logging
import math

import logManager

from cli.error_handlers import EXIT_OK
from config_manager.runtime_config_handler import CliInvocation
from services import mc_lab, quad_engine
from services.exceptions import DomainError
from services.utils import deg_to_rad, format_degrees, format_full, render
from sphere_objects.constants_object import CONSTANTS

logger: logging.Logger = logManager.logger.get_logger(__name__)

PE_MC_SIGMAS: float = 3.0


class QuadratureCommands:
    """
    Handlers for `kappa`, `pe` and `gdist`.
    """

    def kappa(self, invocation: CliInvocation) -> int:
        """
        Print kappa by quadrature, in closed form or by simulation, with E(N) = 32 kappa.
        kappa is always printed with 17 significant digits.

        Returns:
            int: Exit code.
        """
        method: str = invocation.method or "quad"
        if method == "mc":
            n: int = invocation.n or 1
            report = mc_lab.run_tetra_experiment(n, invocation.seed, invocation.threads, invocation.batch_size)
            estimate = report.kappa_hat
            print(f"kappa (mc) = {format_full(estimate.value)} +- {format_full(estimate.std_err)} "
                  f"(n={n}, seed={invocation.seed})")
            print(f"kappa (closed) = {format_full(CONSTANTS.kappa_closed)}")
            return EXIT_OK
        value: float = quad_engine.kappa(invocation.spec, method)
        print(f"kappa ({method}) = {format_full(value)}")
        print(f"E(N) = 32 kappa = {format_full(32.0 * value)}")
        if method != "closed":
            print(f"closed form difference = {format(value - CONSTANTS.kappa_closed, '.3e')}")
        return EXIT_OK

    def pe(self, invocation: CliInvocation) -> int:
        """
        Print P{E | theta} in the chosen chart, optionally next to a simulated estimate.

        Returns:
            int: Exit code.
        """
        if invocation.theta_deg is None:
            raise DomainError("a circumcap radius is required", "theta")
        theta: float = deg_to_rad(invocation.theta_deg, "theta")
        full: bool = invocation.full
        if invocation.chart == "side":
            value: float = quad_engine.prob_E_given_theta_ab_chart(theta, invocation.spec)
        else:
            value = quad_engine.prob_E_given_theta(theta, invocation.spec)
        print(f"P(E | theta={format_degrees(theta)}) = {render(value, full)} ({invocation.chart or 'angle'} chart)")
        if invocation.mc:
            estimate = mc_lab.mc_prob_E_given_theta(theta, invocation.mc, invocation.seed,
                                                    invocation.threads, invocation.batch_size)
            print(f"monte carlo = {render(estimate.value, full)} +- {render(estimate.std_err, full)} "
                  f"(n={invocation.mc}, seed={invocation.seed})")
            if not estimate.within(value, PE_MC_SIGMAS):
                logger.warning(f"Simulated P(E | theta) differs from quadrature by more than {PE_MC_SIGMAS} sigma")
        return EXIT_OK

    def gdist(self, invocation: CliInvocation) -> int:
        """
        Print the moments of theta_abc given E and the g/G grid, or write the grid as CSV.

        Returns:
            int: Exit code.
        """
        full: bool = invocation.full
        points: int = invocation.grid if invocation.grid is not None else 91
        first, second = quad_engine.g_moments(invocation.spec)
        print(f"E[theta_abc | E] = {render(first, full)} ({render(math.degrees(first), full)} deg)")
        print(f"E[theta_abc^2 | E] = {render(second, full)}")
        print(f"sd[theta_abc | E] = {render(math.sqrt(max(0.0, second - first * first)), full)}")
        if invocation.out:
            mc_lab.emit_g_table(invocation.out, points, invocation.spec)
            print(f"g and G on {points} points written to {invocation.out}")
            return EXIT_OK
        if points < 2:
            raise DomainError(f"grid needs at least 2 points, got {points}", "grid")
        table = quad_engine.conditional_table(invocation.spec)
        print("theta_deg,g,G")
        for i in range(points):
            theta: float = 0.5 * math.pi * (1.0 + i / (points - 1))
            print(f"{render(math.degrees(theta), full)},{render(float(table.g(theta)), full)},"
                  f"{render(quad_engine.G_cdf(theta, invocation.spec), full)}")
        return EXIT_OK
