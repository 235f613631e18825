"""
Utility functions for the command line: degree conversion and number rendering
"""
import math
from typing import Optional

from services.exceptions import DomainError
from sphere_objects.estimate_object import OpenValue


def deg_to_rad(degrees: float, argument: str = "degrees") -> float:
    """
    Convert a finite angle in degrees to radians. All CLI angles pass through here.

    Args:
        degrees (float): Angle in degrees.
        argument (str): Parameter name reported when the value is not finite.

    Returns:
        float: Angle in radians.
    """
    if not math.isfinite(degrees):
        raise DomainError(f"{argument}={degrees!r} is not a finite angle", argument)
    return math.radians(degrees)


def format_degrees(radians: float) -> str:
    """Render an angle as degrees with the shortest exact-looking form, e.g. 88° or 84.2531°"""
    degrees: float = math.degrees(radians)
    rounded: float = round(degrees, 4)
    if rounded == int(rounded):
        return f"{int(rounded)}°"
    return f"{rounded:.4f}".rstrip("0") + "°"


def format_4(value: Optional[float]) -> str:
    """Four-decimal rendering; None and OPEN render as words"""
    if value is None:
        return "n/a"
    if isinstance(value, OpenValue):
        return str(value)
    return f"{value:.4f}"


def format_full(value: float) -> str:
    """Round-trippable rendering"""
    return format(value, ".17g")


def render(value: Optional[float], full: bool = False) -> str:
    """
    Render a result for stdout.

    Args:
        value (Optional[float]): A real, None for an undefined bound, or OPEN.
        full (bool): Use 17 significant digits instead of 4 decimals.

    Returns:
        str: The rendered value.
    """
    if full and value is not None and not isinstance(value, OpenValue):
        return format_full(value)
    return format_4(value)
