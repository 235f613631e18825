"""Command handlers for the tetrahedron simulation and the histograms."""
import logging

import logManager

from cli.error_handlers import EXIT_OK
from config_manager.runtime_config_handler import CliInvocation
from services import mc_lab, quad_engine
from services.utils import format_full, render
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.histogram_object import Histogram
from sphere_objects.report_object import FitReport, TetraReport

logger: logging.Logger = logManager.logger.get_logger(__name__)


class SimulationCommands:
    """
    Handlers for `simulate tetra` and `hist theta-abc|theta-min`.
    """

    def simulate(self, invocation: CliInvocation) -> int:
        """
        Run the tetrahedron experiment and print its report.

        Returns:
            int: Exit code.
        """
        full: bool = invocation.full
        report: TetraReport = mc_lab.run_tetra_experiment(invocation.n or 1, invocation.seed,
                                                          invocation.threads, invocation.batch_size)
        print(f"n={report.n} seed={report.seed}")
        print(f"P(well-centered) = {render(report.p_wc.value, full)} +- {render(report.p_wc.std_err, full)} "
              f"(exact 0.125)")
        print(f"P(ABC acute) = {render(report.p_acute.value, full)} +- {render(report.p_acute.std_err, full)} "
              f"(exact 0.5)")
        print(f"kappa_hat = {render(report.kappa_hat.value, full)} +- {render(report.kappa_hat.std_err, full)} "
              f"(closed {format_full(CONSTANTS.kappa_closed)})")
        if report.e_n_hat is not None:
            print(f"E(N) = {render(report.e_n_hat.value, full)} +- {render(report.e_n_hat.std_err, full)} "
                  f"(closed {format_full(CONSTANTS.e_n_closed)})")
        print("N counts: " + " ".join(f"{k}:{v}" for k, v in sorted(report.n_counts.items())))
        print(f"min N = {report.min_n if report.min_n is not None else 'n/a'}")
        print(f"implication violations = {report.implication_violations}")
        print(f"face identity mismatches = {report.face_identity_mismatches} of {report.all_acute_quads}")
        return EXIT_OK

    def hist(self, invocation: CliInvocation) -> int:
        """
        Build a histogram with its overlay, print the chi-square fit and write the CSV.

        Returns:
            int: Exit code.
        """
        full: bool = invocation.full
        n: int = invocation.n or 1
        bins: int = invocation.bins or 100
        if invocation.kind == "theta-abc":
            histogram: Histogram = mc_lab.hist_theta_abc(n, bins, invocation.seed, invocation.spec,
                                                         invocation.threads, invocation.batch_size)
            fit: FitReport = mc_lab.fit_theta_abc(histogram, invocation.spec)
            first, _ = quad_engine.g_moments(invocation.spec)
            print(f"mean theta_abc = {render(histogram.sample_mean, full)} (g: {render(first, full)})")
        else:
            histogram = mc_lab.hist_theta_min(n, bins, invocation.seed, invocation.spec,
                                              invocation.threads, invocation.batch_size)
            fit = mc_lab.fit_theta_min_left(histogram)
            excess: list[int] = mc_lab.overlay_excess(histogram)
            print(f"bins above psi by 3 sigma = {len(excess)}")
        print(f"chi2 = {render(fit.statistic, full)} dof = {fit.dof} p = {render(fit.p_value, full)} "
              f"(bins used {fit.bins_used})")
        if invocation.out:
            mc_lab.emit_csv(histogram, invocation.out)
            print(f"{bins} bins written to {invocation.out}")
        return EXIT_OK
