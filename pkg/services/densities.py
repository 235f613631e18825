"""
Densities of random inscribed triangles and the spherical angle map lambda.

Every density is available in the side chart (a, b) and the inscribed-angle
chart (alpha, beta), related by a = 2r sin(alpha), b = 2r sin(beta) with
r = sin(theta). Integration code uses the angle chart.
"""
import logging
import math

import logManager

from services.exceptions import DomainError
from services.geom_core import point_on_circle, spherical_angle
from sphere_objects.triangle_object import TrianglePolar

logger: logging.Logger = logManager.logger.get_logger(__name__)

ARCCOS_TOLERANCE: float = 1e-12


def in_triangle_domain(alpha: float, beta: float) -> bool:
    """Open domain of two inscribed angles: 0 < alpha, 0 < beta, alpha + beta < pi."""
    return alpha > 0.0 and beta > 0.0 and alpha + beta < math.pi


def in_acute_region(alpha: float, beta: float) -> bool:
    """All three inscribed angles below pi/2."""
    return alpha < 0.5 * math.pi and beta < 0.5 * math.pi and alpha + beta > 0.5 * math.pi


def circle_angle_density(alpha: float, beta: float) -> float:
    """
    Joint density of two angles of a triangle on three uniform points of a circle.

    Args:
        alpha (float): First angle.
        beta (float): Second angle.

    Returns:
        float: 2/pi² on the triangle domain, else 0.
    """
    return 2.0 / math.pi ** 2 if in_triangle_domain(alpha, beta) else 0.0


def circle_side_density(a: float, b: float, r: float) -> float:
    """
    Joint density of two sides of a triangle on three uniform points of a circle
    of radius r; the sides are independent.

    Args:
        a (float): First side.
        b (float): Second side.
        r (float): Circle radius, > 0.

    Returns:
        float: 4/(pi² r²) [(4 - (a/r)²)(4 - (b/r)²)]^(-1/2) on (0, 2r)², else 0.
    """
    if not r > 0.0:
        raise DomainError(f"Circle radius must be positive, got {r!r}", "r")
    if not (0.0 < a < 2.0 * r and 0.0 < b < 2.0 * r):
        return 0.0
    return 4.0 / (math.pi ** 2 * r ** 2) / math.sqrt((4.0 - (a / r) ** 2) * (4.0 - (b / r) ** 2))


def sphere_angle_density(alpha: float, beta: float) -> float:
    """
    Joint density of two angles of the chordal triangle on three uniform points of S².

    Args:
        alpha (float): First angle.
        beta (float): Second angle.

    Returns:
        float: (8 / 3pi) sin(alpha) sin(beta) sin(alpha + beta) on the triangle domain, else 0.
    """
    if not in_triangle_domain(alpha, beta):
        return 0.0
    return 8.0 / (3.0 * math.pi) * math.sin(alpha) * math.sin(beta) * math.sin(alpha + beta)


def _circle_radius(theta: float) -> float:
    r: float = math.sin(theta)
    if not r > 0.0:
        raise DomainError(f"sin(theta) must be positive, got theta={theta!r}", "theta")
    return r


def _edge_terms(a: float, b: float, r: float) -> tuple[float, float]:
    """The two bracket terms a/sqrt(4r² - a²), b/sqrt(4r² - b²), guarded at the singular edge."""
    if a == 2.0 * r or b == 2.0 * r:
        raise DomainError(f"Density is singular at a side equal to 2r (a={a!r}, b={b!r}, r={r!r}); "
                          "integrate in the angle chart", "a")
    return a / math.sqrt(4.0 * r * r - a * a), b / math.sqrt(4.0 * r * r - b * b)


def delta_density(a: float, b: float, theta: float) -> float:
    """
    Acute portion of the conditional density of the sides (a, b) given the
    circumcap radius theta.

    Args:
        a (float): First side.
        b (float): Second side.
        theta (float): Circumcap radius, r = sin(theta) > 0.

    Returns:
        float: (ab / 6pi r⁴)(a/sqrt(4r² - a²) + b/sqrt(4r² - b²)) where
            a² + b² > 4r², else 0.
    """
    r: float = _circle_radius(theta)
    if not (0.0 < a <= 2.0 * r and 0.0 < b <= 2.0 * r):
        return 0.0
    term_a, term_b = _edge_terms(a, b, r)
    if a * a + b * b <= 4.0 * r * r:
        return 0.0
    return a * b / (6.0 * math.pi * r ** 4) * (term_a + term_b)


def trivariate_mixture_density(a: float, b: float, theta: float) -> float:
    """
    Full conditional density of the sides (a, b) given theta, acute and obtuse
    triangles together: a (2/3, 1/3) mixture.

    Args:
        a (float): First side.
        b (float): Second side.
        theta (float): Circumcap radius, r = sin(theta) > 0.

    Returns:
        float: (ab / 6pi r⁴)(A + B + |A - B|) / (sqrt(4 - (a/r)²) sqrt(4 - (b/r)²))
            with A = (a/r) sqrt(4 - (b/r)²), B = (b/r) sqrt(4 - (a/r)²); 0 outside (0, 2r)².
    """
    r: float = _circle_radius(theta)
    if not (0.0 < a <= 2.0 * r and 0.0 < b <= 2.0 * r):
        return 0.0
    _edge_terms(a, b, r)
    root_a: float = math.sqrt(4.0 - (a / r) ** 2)
    root_b: float = math.sqrt(4.0 - (b / r) ** 2)
    term_a: float = (a / r) * root_b
    term_b: float = (b / r) * root_a
    return a * b / (6.0 * math.pi * r ** 4) * (term_a + term_b + abs(term_a - term_b)) / (root_a * root_b)


def cos_gamma_chordal(a: float, b: float, theta: float) -> float:
    """
    Cosine of the third angle of an acute chordal triangle with sides a, b and
    circumradius r = sin(theta): (ab - sqrt(4r² - a²) sqrt(4r² - b²)) / 4r².
    """
    r: float = _circle_radius(theta)
    return (a * b - math.sqrt(max(0.0, 4.0 * r * r - a * a)) * math.sqrt(max(0.0, 4.0 * r * r - b * b))) / (4.0 * r * r)


def _clamped_acos(x: float) -> float:
    if abs(x) > 1.0 + ARCCOS_TOLERANCE:
        raise ArithmeticError(f"arccos argument {x!r} beyond rounding tolerance")
    return math.acos(max(-1.0, min(1.0, x)))


def lambda_angle(a: float, b: float, theta: float) -> float:
    """
    Spherical angle at the third vertex of the spherical triangle whose
    chordal triangle is acute with sides a, b on the circle of radius sin(theta).

    Args:
        a (float): First side, 0 < a < min(2, 2r).
        b (float): Second side, 0 < b < min(2, 2r).
        theta (float): Circumcap radius.

    Returns:
        float: arccos(((1 - r²)ab - sqrt(4r² - a²) sqrt(4r² - b²)) / (r² sqrt(4 - a²) sqrt(4 - b²))).
    """
    if not (0.0 < a < 2.0):
        raise DomainError(f"Side a={a!r} must lie in (0, 2)", "a")
    if not (0.0 < b < 2.0):
        raise DomainError(f"Side b={b!r} must lie in (0, 2)", "b")
    r: float = _circle_radius(theta)
    if not (a <= 2.0 * r and b <= 2.0 * r):
        raise DomainError(f"Sides ({a!r}, {b!r}) exceed the chord bound 2r={2.0 * r!r}", "a")
    numerator: float = ((1.0 - r * r) * a * b
                        - math.sqrt(max(0.0, 4.0 * r * r - a * a)) * math.sqrt(max(0.0, 4.0 * r * r - b * b)))
    denominator: float = r * r * math.sqrt(4.0 - a * a) * math.sqrt(4.0 - b * b)
    return _clamped_acos(numerator / denominator)


def lambda_from_trig(sin_a: float, cos_a: float, sin_b: float, cos_b: float, eps: float) -> float:
    """
    lambda in terms of the inscribed angles, with eps = cos(theta).

    Writes the arccos argument as x = (eps² sa sb - ca cb) / sqrt(PQ) with
    P = ca² + eps² sa², Q = cb² + eps² sb², and evaluates 1 + x without
    cancellation so that the great-circle limit eps -> 0 stays accurate.
    """
    e2: float = eps * eps
    p: float = cos_a * cos_a + e2 * sin_a * sin_a
    q: float = cos_b * cos_b + e2 * sin_b * sin_b
    root: float = math.sqrt(p * q)
    if root == 0.0:
        return math.pi
    gap: float = e2 * (cos_a * cos_a * sin_b * sin_b + sin_a * sin_a * cos_b * cos_b
                       + e2 * sin_a * sin_a * sin_b * sin_b)
    one_plus: float = (e2 * sin_a * sin_b + gap / (root + cos_a * cos_b)) / root
    x: float = one_plus - 1.0
    one_minus: float = 2.0 - one_plus
    return math.atan2(math.sqrt(max(0.0, one_minus * one_plus)), x)


def lambda_angle_chart(alpha: float, beta: float, theta: float) -> float:
    """
    lambda at inscribed angles (alpha, beta) of an acute chordal triangle on
    the circle of spherical radius theta. Equal to lambda_angle at a = 2r sin(alpha),
    b = 2r sin(beta), but accurate up to theta = pi/2.
    """
    return lambda_from_trig(math.sin(alpha), math.cos(alpha), math.sin(beta), math.cos(beta), math.cos(theta))


def embedded_triangle(alpha: float, beta: float, theta: float):
    """
    Vertices A, B, C of a triangle with inscribed angles alpha, beta (at A, B)
    placed on the circle of spherical radius theta about the north pole.

    Returns:
        tuple[UnitVector, UnitVector, UnitVector]: The three vertices.
    """
    gamma: float = math.pi - alpha - beta
    return (point_on_circle(theta, 0.0),
            point_on_circle(theta, 2.0 * gamma),
            point_on_circle(theta, 2.0 * gamma + 2.0 * alpha))


def embedded_lambda(a: float, b: float, theta: float) -> float:
    """
    Independent evaluation of lambda: embed the triangle on its circle and
    measure the spherical angle at the third vertex.

    Args:
        a (float): First side.
        b (float): Second side.
        theta (float): Circumcap radius.

    Returns:
        float: The spherical angle at C.
    """
    triangle: TrianglePolar = TrianglePolar.from_sides_acute(a, b, theta)
    vertex_a, vertex_b, vertex_c = embedded_triangle(triangle.alpha, triangle.beta, theta)
    return spherical_angle(vertex_c, vertex_a, vertex_b)
