"""
Adaptive quadrature for the conditional probability P{E | theta}, kappa = P{E},
the density g and distribution G of theta_abc given E, and the normalization
checks of the triangle densities.

All double integrals are nested `scipy.integrate.quad` calls with the inner
integral at one tenth of the outer tolerance. P{E | theta} is integrated in the
inscribed-angle chart, where the integrand is smooth on the acute region
{alpha, beta < pi/2, alpha + beta > pi/2}.
"""
from threading import Lock
from typing import Callable, Optional, Sequence
import logging
import math
import warnings

import numpy as np
from scipy import integrate
from scipy.interpolate import BarycentricInterpolator

import logManager

from services.densities import (circle_angle_density, lambda_from_trig, sphere_angle_density,
                                trivariate_mixture_density)
from services.exceptions import ConvergenceError, DomainError
from sphere_objects.constants_object import CONSTANTS
from sphere_objects.quadrature_object import DEFAULT_SPEC, QuadratureSpec

logger: logging.Logger = logManager.logger.get_logger(__name__)

HALF_PI: float = 0.5 * math.pi
KAPPA_METHODS: tuple[str, ...] = ("quad", "closed")


def adaptive_quad(func: Callable[[float], float], lower: float, upper: float, spec: QuadratureSpec,
                  label: str, weight: Optional[str] = None, wvar: Optional[tuple[float, float]] = None) -> float:
    """
    One adaptive Gauss-Kronrod integral with the tolerances of `spec`.

    Integration warnings are tolerated when the reported error bound still
    meets the target; otherwise a ConvergenceError carries the best estimate.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, error = integrate.quad(func, lower, upper, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                                      limit=spec.max_subdivisions, weight=weight, wvar=wvar)
    if caught:
        if error > spec.target(value):
            raise ConvergenceError(f"{label} did not converge on [{lower:.6g}, {upper:.6g}]", value, error)
        logger.debug(f"{label}: accepted with warning '{caught[-1].message}' (error {error:.2e})")
    return value


def _check_theta(theta: float, closed_left: bool = False) -> None:
    inside: bool = (HALF_PI <= theta <= math.pi) if closed_left else (HALF_PI < theta <= math.pi)
    if not inside:
        interval: str = "[pi/2, pi]" if closed_left else "(pi/2, pi]"
        raise DomainError(f"theta={theta!r} outside {interval}", "theta")


def _acute_region_integral(integrand: Callable[[float, float], float], spec: QuadratureSpec, label: str) -> float:
    """Integrate f(alpha, beta) over the acute triangle region of the angle chart."""
    inner_spec: QuadratureSpec = spec.inner()

    def over_alpha(beta: float) -> float:
        return adaptive_quad(lambda alpha: integrand(alpha, beta), HALF_PI - beta, HALF_PI, inner_spec, label)

    return adaptive_quad(over_alpha, 0.0, HALF_PI, spec, label)


def prob_E_given_theta(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    P{ABCD well-centered and ABC acute | theta_abc = theta}: the expected area
    of the random spherical triangle over 4 pi, restricted to acute bases.

    Args:
        theta (float): Circumcap radius in (pi/2, pi].
        spec (QuadratureSpec): Quadrature tolerances.

    Returns:
        float: Value in [0, 1/4].
    """
    _check_theta(theta)
    eps: float = math.cos(theta)

    def integrand(alpha: float, beta: float) -> float:
        lam: float = lambda_from_trig(math.sin(alpha), math.cos(alpha), math.sin(beta), math.cos(beta), eps)
        return (3.0 * lam - math.pi) / (4.0 * math.pi) * sphere_angle_density(alpha, beta)

    return _acute_region_integral(integrand, spec, f"P(E|theta={theta:.6f})")


def _side_chart_integral(weight_fn: Callable[[float, float, float, float], float], theta: float,
                         spec: QuadratureSpec, label: str) -> float:
    """
    Integrate h(a, b) delta(a, b, theta) over the acute region of the side chart.

    delta splits into a term singular only at a = 2r and its mirror image; the
    region and h are symmetric, so the integral is twice the first term's. The
    1/sqrt(2r - a) factor is handled by algebraic endpoint weights. `weight_fn`
    receives the sines and cosines of the inscribed angles.
    """
    r: float = math.sin(theta)
    two_r: float = 2.0 * r
    inner_spec: QuadratureSpec = spec.inner()

    def over_a(b: float) -> float:
        sin_b: float = b / two_r
        cos_b: float = math.sqrt(max(0.0, (two_r - b) * (two_r + b))) / two_r

        def smooth_part(a: float) -> float:
            sin_a: float = a / two_r
            cos_a: float = math.sqrt(max(0.0, (two_r - a) * (two_r + a))) / two_r
            h: float = weight_fn(sin_a, cos_a, sin_b, cos_b)
            return h * a * a * b / (6.0 * math.pi * r ** 4 * math.sqrt(two_r + a))

        lower: float = math.sqrt(max(0.0, (two_r - b) * (two_r + b)))
        return adaptive_quad(smooth_part, lower, two_r, inner_spec, label, weight="alg", wvar=(0.0, -0.5))

    return 2.0 * adaptive_quad(over_a, 0.0, two_r, spec, label)


def prob_E_given_theta_ab_chart(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    P{E | theta} integrated directly in the side chart (a, b) with algebraic
    endpoint weights; an independent check of `prob_E_given_theta`.
    """
    _check_theta(theta)
    if math.sin(theta) <= 0.0:
        return 0.0
    eps: float = math.cos(theta)

    def weight_fn(sin_a: float, cos_a: float, sin_b: float, cos_b: float) -> float:
        return (3.0 * lambda_from_trig(sin_a, cos_a, sin_b, cos_b, eps) - math.pi) / (4.0 * math.pi)

    return _side_chart_integral(weight_fn, theta, spec, f"P(E|theta={theta:.6f}) side chart")


def delta_normalization(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    Integral of delta(a, b, theta) over its support, computed in the singular
    side chart. Equals the acuteness probability 1/2 for every theta.
    """
    _check_theta(theta)
    return _side_chart_integral(lambda *_: 1.0, theta, spec, f"delta normalization theta={theta:.6f}")


def mixture_normalization(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    Integral of the trivariate mixture density over (0, 2r)², through the
    substitution a = 2r sin(s), b = 2r sin(t). The inner range is split at
    t = s where the density has a kink.
    """
    _check_theta(theta)
    r: float = math.sin(theta)
    two_r: float = 2.0 * r
    inner_spec: QuadratureSpec = spec.inner()
    label: str = f"mixture normalization theta={theta:.6f}"

    def integrand(s: float, t: float) -> float:
        a: float = two_r * math.sin(s)
        b: float = two_r * math.sin(t)
        if a >= two_r or b >= two_r:
            return 0.0
        return trivariate_mixture_density(a, b, theta) * two_r * math.cos(s) * two_r * math.cos(t)

    def over_t(s: float) -> float:
        return (adaptive_quad(lambda t: integrand(s, t), 0.0, s, inner_spec, label)
                + adaptive_quad(lambda t: integrand(s, t), s, HALF_PI, inner_spec, label))

    return adaptive_quad(over_t, 0.0, HALF_PI, spec, label)


def circle_acute_probability(spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Acuteness probability of a triangle on three uniform points of a circle (1/4)."""
    return _acute_region_integral(circle_angle_density, spec, "circle acute probability")


def sphere_acute_probability(spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Acuteness probability of the chordal triangle on three uniform points of S² (1/2)."""
    return _acute_region_integral(sphere_angle_density, spec, "sphere acute probability")


def theta_abc_density(theta: float) -> float:
    """Unconditional density (3/2) sin³(theta) of theta_abc on (pi/2, pi)."""
    return 1.5 * math.sin(theta) ** 3


def kappa(spec: QuadratureSpec = DEFAULT_SPEC, method: str = "quad") -> float:
    """
    kappa = P{ABCD well-centered and ABC acute}.

    Args:
        spec (QuadratureSpec): Quadrature tolerances.
        method (str): "quad" integrates (3/2) sin³(theta) P{E | theta} over
            (pi/2, pi); "closed" returns 11/96 - 1/(8 pi²).

    Returns:
        float: kappa.
    """
    if method == "closed":
        return CONSTANTS.kappa_closed
    if method != "quad":
        raise DomainError(f"Unknown kappa method {method!r}, expected one of {KAPPA_METHODS}", "method")
    inner_spec: QuadratureSpec = spec.inner()
    value: float = adaptive_quad(lambda theta: theta_abc_density(theta) * prob_E_given_theta(theta, inner_spec),
                                 HALF_PI, math.pi, spec, "kappa")
    logger.debug(f"kappa by quadrature: {value:.12f} (closed form {CONSTANTS.kappa_closed:.12f})")
    return value


def _chebyshev_nodes(count: int) -> np.ndarray:
    """First-kind Chebyshev nodes mapped to (0, 1), ascending."""
    k: np.ndarray = np.arange(count)
    return np.sort(0.5 * (1.0 + np.cos((2.0 * k + 1.0) * math.pi / (2.0 * count))))


def _theta_from_u(u: np.ndarray | float) -> np.ndarray | float:
    return HALF_PI + HALF_PI * u ** 3


def _u_from_theta(theta: np.ndarray | float) -> np.ndarray | float:
    return np.cbrt((np.asarray(theta, dtype=float) - HALF_PI) / HALF_PI)


class ConditionalTable:
    """
    Memoized P{E | theta} on a Chebyshev grid with barycentric interpolation.

    P{E | theta} has an eps*log(eps) term at theta = pi/2, so nodes live in
    u with theta = pi/2 + (pi/2) u³, which makes the interpolant smooth.
    """

    def __init__(self, spec: QuadratureSpec = DEFAULT_SPEC) -> None:
        self.spec: QuadratureSpec = spec
        self.nodes: np.ndarray = _chebyshev_nodes(spec.table_nodes)
        self.thetas: np.ndarray = _theta_from_u(self.nodes)
        self.values: np.ndarray = np.array([prob_E_given_theta(float(t), spec) for t in self.thetas])
        self._interpolator: BarycentricInterpolator = BarycentricInterpolator(self.nodes, self.values)
        logger.debug(f"P(E|theta) table built on {spec.table_nodes} nodes")

    def __call__(self, theta: np.ndarray | float) -> np.ndarray | float:
        """Interpolated P{E | theta} for theta in [pi/2, pi], clipped at 0."""
        values: np.ndarray = np.maximum(0.0, np.asarray(self._interpolator(_u_from_theta(theta)), dtype=float))
        return float(values) if np.ndim(values) == 0 else values

    def g(self, theta: np.ndarray | float) -> np.ndarray | float:
        """Interpolated density g of theta_abc given E."""
        return 1.5 / CONSTANTS.kappa_closed * np.sin(theta) ** 3 * self(theta)


_TABLES: dict[QuadratureSpec, ConditionalTable] = {}
_TABLES_LOCK: Lock = Lock()


def conditional_table(spec: QuadratureSpec = DEFAULT_SPEC) -> ConditionalTable:
    """
    Shared table for a given spec, built once on first use.

    Args:
        spec (QuadratureSpec): Quadrature tolerances and node count.

    Returns:
        ConditionalTable: The cached table.
    """
    with _TABLES_LOCK:
        table: Optional[ConditionalTable] = _TABLES.get(spec)
        if table is None:
            table = ConditionalTable(spec)
            _TABLES[spec] = table
    return table


def g_density(theta: float, spec: QuadratureSpec = DEFAULT_SPEC, cached: bool = False) -> float:
    """
    Density of theta_abc given E: (3 / 2 kappa) sin³(theta) P{E | theta}, with
    the closed-form kappa.

    Args:
        theta (float): Circumcap radius in (pi/2, pi].
        spec (QuadratureSpec): Quadrature tolerances.
        cached (bool): Use the interpolation table instead of direct quadrature.

    Returns:
        float: g(theta) >= 0.
    """
    _check_theta(theta)
    if cached:
        return float(conditional_table(spec).g(theta))
    return 1.5 / CONSTANTS.kappa_closed * math.sin(theta) ** 3 * prob_E_given_theta(theta, spec)


def _integrate_g(upper: float, spec: QuadratureSpec, power: int, label: str) -> float:
    """Integral of theta^power g(theta) from pi/2 to `upper`, in the u variable of the table."""
    table: ConditionalTable = conditional_table(spec)
    upper_u: float = float(_u_from_theta(upper))
    if upper_u <= 0.0:
        return 0.0

    def integrand(u: float) -> float:
        theta: float = float(_theta_from_u(u))
        return theta ** power * float(table.g(theta)) * 3.0 * HALF_PI * u * u

    return adaptive_quad(integrand, 0.0, upper_u, spec, label)


def G_cdf(theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    Distribution function of theta_abc given E.

    Args:
        theta (float): Point in [pi/2, pi].
        spec (QuadratureSpec): Quadrature tolerances.

    Returns:
        float: G(theta); 0 at pi/2, 1 at pi.
    """
    _check_theta(theta, closed_left=True)
    return _integrate_g(theta, spec, 0, f"G({theta:.6f})")


def G_cdf_grid(thetas: Sequence[float], spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """G evaluated on a grid of points."""
    return np.array([G_cdf(float(t), spec) for t in thetas])


def g_moments(spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """
    First and second raw moments of theta_abc given E.

    Returns:
        tuple[float, float]: (E[theta], E[theta²]).
    """
    first: float = _integrate_g(math.pi, spec, 1, "first moment of g")
    second: float = _integrate_g(math.pi, spec, 2, "second moment of g")
    return first, second
