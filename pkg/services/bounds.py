"""
Lower bounds for the coverage probability on (omega0, pi/2).

psi dominates the density of theta_min: on [0, pi/2] it is that density
(the derivative of Phi, known in closed form through p(omega)), on (pi/2, pi]
it is 4 kappa g. psi_lcv is the log-convex envelope on [pi/2, theta0].
q and q_lcv subtract the matching areas from 1/8.
"""
from typing import Optional, Sequence
import logging
import math

import numpy as np
from scipy import optimize

import logManager

from services import quad_engine
from services.coverage import gilbert_upper, p_exact
from services.exceptions import DomainError
from services.sampling import DEFAULT_BATCH_SIZE, sample_theta_min
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.quadrature_object import DEFAULT_SPEC, QuadratureSpec
from sphere_objects.report_object import BoundReport, DominanceReport, DominanceRow

logger: logging.Logger = logManager.logger.get_logger(__name__)

HALF_PI: float = 0.5 * math.pi
LCV_SPAN: float = CONSTANTS.theta0 - HALF_PI
LCV_BASE: float = 2.5
THRESHOLD_BRACKET: tuple[float, float] = (math.radians(80.0), HALF_PI - 1e-9)
THRESHOLD_XTOL: float = 1e-4


def psi_left(theta: float) -> float:
    """Density of theta_min on [0, pi/2]: 24 s⁵ c (2 - 3s²) with s = sin(theta/2), c = cos(theta/2)."""
    s: float = math.sin(0.5 * theta)
    return 24.0 * s ** 5 * math.cos(0.5 * theta) * (2.0 - 3.0 * s * s)


def theta_min_cdf_left(theta: float) -> float:
    """
    Distribution function of theta_min on [0, pi/2]: 16 s⁶ - 18 s⁸ with s = sin(theta/2).

    Args:
        theta (float): Point in [0, pi/2].

    Returns:
        float: Phi(theta); 7/8 at pi/2.
    """
    if not 0.0 <= theta <= HALF_PI:
        raise DomainError(f"theta={theta!r} outside [0, pi/2]", "theta")
    s2: float = math.sin(0.5 * theta) ** 2
    return 16.0 * s2 ** 3 - 18.0 * s2 ** 4


def psi(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    The dominating function for the density of theta_min.

    Args:
        theta (float): Point in [0, pi].
        spec (QuadratureSpec): Quadrature settings of the g table.

    Returns:
        float: psi_left(theta) on [0, pi/2], 4 kappa g(theta) on (pi/2, pi].
    """
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta={theta!r} outside [0, pi]", "theta")
    if theta <= HALF_PI:
        return psi_left(theta)
    return 4.0 * CONSTANTS.kappa_closed * float(quad_engine.conditional_table(spec).g(theta))


def psi_array(thetas: np.ndarray, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """psi over an array of points."""
    return np.array([psi(float(t), spec) for t in np.asarray(thetas, dtype=float)])


def _check_lcv(theta: float) -> None:
    if not HALF_PI <= theta <= CONSTANTS.theta0:
        raise DomainError(f"theta={theta!r} outside [pi/2, theta0]", "theta")


def psi_lcv(theta: float) -> float:
    """
    Log-convex envelope (5/2)^((theta0 - theta)/(theta0 - pi/2)) - 1 on [pi/2, theta0].

    Args:
        theta (float): Point in [pi/2, theta0].

    Returns:
        float: 3/2 at pi/2, 0 at theta0.
    """
    _check_lcv(theta)
    return LCV_BASE ** ((CONSTANTS.theta0 - theta) / LCV_SPAN) - 1.0


def psi_lcv_array(thetas: np.ndarray) -> np.ndarray:
    """psi_lcv over an array; NaN outside [pi/2, theta0]."""
    thetas = np.asarray(thetas, dtype=float)
    inside: np.ndarray = (thetas >= HALF_PI) & (thetas <= CONSTANTS.theta0)
    return np.where(inside, LCV_BASE ** ((CONSTANTS.theta0 - thetas) / LCV_SPAN) - 1.0, np.nan)


def Psi_lcv(theta: float) -> float:
    """
    Integral of psi_lcv from pi/2 to theta, in closed form.

    Args:
        theta (float): Point in [pi/2, theta0].

    Returns:
        float: L/ln(5/2) (5/2 - (5/2)^((theta0 - theta)/L)) - (theta - pi/2), L = theta0 - pi/2.
    """
    _check_lcv(theta)
    exponent: float = (CONSTANTS.theta0 - theta) / LCV_SPAN
    return LCV_SPAN / math.log(LCV_BASE) * (LCV_BASE - LCV_BASE ** exponent) - (theta - HALF_PI)


def Psi_lcv_quad(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Psi_lcv by adaptive quadrature of psi_lcv."""
    _check_lcv(theta)
    return quad_engine.adaptive_quad(psi_lcv, HALF_PI, theta, spec, "Psi_lcv")


def q_bound(omega: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    Lower bound q(omega) = (1/8)(1 - 32 kappa G(pi - omega)).

    Args:
        omega (float): Cap radius in (0, pi/2).
        spec (QuadratureSpec): Quadrature settings.

    Returns:
        float: The bound; negative values mean the bound is trivial.
    """
    if not 0.0 < omega < HALF_PI:
        raise DomainError(f"omega={omega!r} outside (0, pi/2)", "omega")
    return 0.125 * (1.0 - CONSTANTS.e_n_closed * quad_engine.G_cdf(math.pi - omega, spec))


def q_lcv_bound(omega: float) -> float:
    """
    Lower bound under log-convexity, q_lcv(omega) = 1/8 - Psi_lcv(pi - omega).

    Args:
        omega (float): Cap radius in (omega0, pi/2).

    Returns:
        float: The bound.
    """
    if not CONSTANTS.omega0 < omega < HALF_PI:
        raise DomainError(f"omega={omega!r} outside (omega0, pi/2)", "omega")
    return 0.125 - Psi_lcv(math.pi - omega)


def threshold_q(spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Cap radius above which q is positive, by bisection on (80 deg, 90 deg)."""
    root: float = optimize.bisect(lambda omega: q_bound(omega, spec), *THRESHOLD_BRACKET, xtol=THRESHOLD_XTOL)
    logger.debug(f"q threshold {math.degrees(root):.4f} deg")
    return root


def threshold_q_lcv() -> float:
    """Cap radius above which q_lcv is positive, by bisection on (80 deg, 90 deg)."""
    root: float = optimize.bisect(q_lcv_bound, *THRESHOLD_BRACKET, xtol=THRESHOLD_XTOL)
    logger.debug(f"q_lcv threshold {math.degrees(root):.4f} deg")
    return root


def psi_areas(spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """
    Areas under psi on [0, pi/2] (7/8) and (pi/2, pi] (4 kappa).

    Returns:
        tuple[float, float]: (left area, right area).
    """
    left: float = quad_engine.adaptive_quad(psi_left, 0.0, HALF_PI, spec, "area under psi on [0, pi/2]")
    right: float = 4.0 * CONSTANTS.kappa_closed * quad_engine.G_cdf(math.pi, spec)
    return left, right


def continuity_probe(eps: float = 1e-6, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """
    The one-sided values psi(pi/2 - eps) and psi(pi/2 + eps). Reported, not asserted.

    Returns:
        tuple[float, float]: (left value, right value).
    """
    left: float = psi(HALF_PI - eps, spec)
    right: float = psi(HALF_PI + eps, spec)
    if abs(left - right) > 1e-3:
        logger.warning(f"psi jumps at pi/2: left {left:.6f}, right {right:.6f}")
    return left, right


def envelope_check(grid: Optional[Sequence[float]] = None, spec: QuadratureSpec = DEFAULT_SPEC,
                   tolerance: float = 1e-8) -> list[tuple[float, float, float]]:
    """
    Points of [pi/2, theta0] where psi_lcv falls below psi. Reported, not asserted.

    Returns:
        list[tuple[float, float, float]]: (theta, psi_lcv, psi) for every violation.
    """
    thetas: Sequence[float] = grid if grid is not None else np.linspace(HALF_PI, CONSTANTS.theta0, 41)
    violations: list[tuple[float, float, float]] = []
    for theta in thetas:
        envelope: float = psi_lcv(float(theta))
        value: float = psi(float(theta), spec)
        if envelope < value - tolerance:
            violations.append((float(theta), envelope, value))
    if violations:
        logger.warning(f"psi_lcv below psi at {len(violations)} of {len(thetas)} grid points")
    return violations


def bound_report(omega: float, spec: QuadratureSpec = DEFAULT_SPEC) -> BoundReport:
    """
    All bounds at one cap radius; bounds outside their domain are None.

    Args:
        omega (float): Cap radius in [0, pi].
        spec (QuadratureSpec): Quadrature settings.

    Returns:
        BoundReport: q, q_lcv, Gilbert's bound and p(omega) or OPEN.
    """
    q: Optional[float] = q_bound(omega, spec) if 0.0 < omega < HALF_PI else None
    q_lcv: Optional[float] = q_lcv_bound(omega) if CONSTANTS.omega0 < omega < HALF_PI else None
    return BoundReport(omega, q, q_lcv, gilbert_upper(omega), p_exact(omega))


def default_dominance_grid(points: int = 19) -> np.ndarray:
    """Evenly spaced xi in (pi/2, pi], excluding pi/2."""
    return np.linspace(HALF_PI, math.pi, points + 1)[1:]


def dominance_check(n: int, grid: Optional[Sequence[float]] = None, seed: int = 0, threads: int = 1,
                    spec: QuadratureSpec = DEFAULT_SPEC, batch_size: int = DEFAULT_BATCH_SIZE) -> DominanceReport:
    """
    Compare F(xi) = 8(Phi(xi) - 7/8), estimated from n simulated theta_min
    values, against 4 G(xi) and 32 kappa G(xi).

    Args:
        n (int): Number of simulated quads.
        grid (Optional[Sequence[float]]): xi values in (pi/2, pi].
        seed (int): Experiment seed.
        threads (int): Worker threads.
        spec (QuadratureSpec): Quadrature settings for G.
        batch_size (int): Quads per random substream.

    Returns:
        DominanceReport: One row per grid point.
    """
    xis: Sequence[float] = grid if grid is not None else default_dominance_grid()
    for xi in xis:
        if not HALF_PI < xi <= math.pi:
            raise DomainError(f"grid point {xi!r} outside (pi/2, pi]", "grid")
    samples: np.ndarray = np.sort(sample_theta_min(n, seed, threads, batch_size))
    rows: list[DominanceRow] = []
    for xi in xis:
        phi_hat: float = np.searchsorted(samples, xi, side="right") / n
        g_value: float = quad_engine.G_cdf(float(xi), spec)
        rows.append(DominanceRow(
            xi=float(xi),
            f_hat=8.0 * (phi_hat - 0.875),
            f_std_err=8.0 * math.sqrt(phi_hat * (1.0 - phi_hat) / n),
            g_cdf=g_value,
            crude=4.0 * g_value,
            refined=CONSTANTS.e_n_closed * g_value,
        ))
    report: DominanceReport = DominanceReport(n, seed, rows)
    if report.crude_violations or report.refined_violations:
        logger.warning(f"Dominance violated: crude {len(report.crude_violations)}, "
                       f"refined {len(report.refined_violations)}")
    return report
