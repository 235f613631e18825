"""Command handlers for exact coverage, bounds and simulated coverage."""
import logging
import math

import logManager

from cli.error_handlers import EXIT_OK
from config_manager.runtime_config_handler import CliInvocation
from services import bounds, coverage
from services.exceptions import DomainError
from services.utils import deg_to_rad, format_degrees, render
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.estimate_object import OpenValue
from sphere_objects.report_object import BoundReport

logger: logging.Logger = logManager.logger.get_logger(__name__)


def _omega(invocation: CliInvocation) -> float:
    if invocation.omega_deg is None:
        raise DomainError("a cap radius is required", "omega")
    return deg_to_rad(invocation.omega_deg, "omega")


class CoverageCommands:
    """
    Handlers for `exact`, `bounds` and `coverage`.
    """

    def exact(self, invocation: CliInvocation) -> int:
        """
        Print p(omega) or the OPEN marker.

        Returns:
            int: Exit code.
        """
        omega: float = _omega(invocation)
        value = coverage.p_exact(omega)
        label: str = f"p({format_degrees(omega)})"
        if isinstance(value, OpenValue):
            print(f"{label} = {value} (omega0 < omega < 90°; no closed form known)")
        else:
            print(f"{label} = {render(value, invocation.full)}")
        return EXIT_OK

    def bounds(self, invocation: CliInvocation) -> int:
        """
        Print q, q_lcv, Gilbert's bound and p at one radius, and the
        positivity thresholds when asked for (or when no radius is given).

        Returns:
            int: Exit code.
        """
        full: bool = invocation.full
        if invocation.omega_deg is not None:
            omega: float = _omega(invocation)
            report: BoundReport = bounds.bound_report(omega, invocation.spec)
            print(f"omega={format_degrees(omega)} q={render(report.q, full)} q_lcv={render(report.q_lcv, full)} "
                  f"gilbert={render(report.gilbert, full)} p={render(report.p_exact_or_open, full)}")
        if invocation.thresholds or invocation.omega_deg is None:
            threshold_q: float = bounds.threshold_q(invocation.spec)
            threshold_lcv: float = bounds.threshold_q_lcv()
            print(f"q > 0 above {format_degrees(threshold_q)}")
            print(f"q_lcv > 0 above {format_degrees(threshold_lcv)}")
            print(f"omega0 = {format_degrees(CONSTANTS.omega0)}")
        return EXIT_OK

    def coverage(self, invocation: CliInvocation) -> int:
        """
        Simulate the coverage probability and print it next to the bounds.

        Returns:
            int: Exit code.
        """
        omega: float = _omega(invocation)
        n: int = invocation.n or 1
        full: bool = invocation.full
        estimate = coverage.p_monte_carlo(omega, n, invocation.seed, invocation.threads, invocation.batch_size)
        report: BoundReport = bounds.bound_report(omega, invocation.spec)
        print(f"p_hat({format_degrees(omega)}) = {render(estimate.p_hat, full)} "
              f"+- {render(estimate.std_err, full)} (n={n}, seed={invocation.seed})")
        print(f"p_exact={render(report.p_exact_or_open, full)} q={render(report.q, full)} "
              f"q_lcv={render(report.q_lcv, full)} gilbert={render(report.gilbert, full)}")
        if report.q is not None and estimate.p_hat < report.q - 3.0 * estimate.std_err:
            logger.warning(f"Simulated coverage falls below q at {math.degrees(omega):.4f} deg")
        return EXIT_OK
