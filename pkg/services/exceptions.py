"""
Exception hierarchy shared by the geometry, quadrature and simulation services.
"""
from typing import Optional


class CoverError(Exception):
    """
    Root of all errors raised by the cap coverage engine.
    """


class DomainError(CoverError, ValueError):
    """
    Raised when an argument lies outside the domain of an operation.

    Args:
        message (str): Human readable description.
        argument (Optional[str]): Name of the offending parameter, used by the CLI
            to name the matching flag.
    """
    def __init__(self, message: str, argument: Optional[str] = None) -> None:
        super().__init__(message)
        self.argument: Optional[str] = argument


class DegenerateGeometryError(CoverError, ValueError):
    """
    Raised for coincident or collinear points where a triangle or circle is required.
    """


class AmbiguousSideError(DegenerateGeometryError):
    """
    Raised when a point lies on the plane of a circumcircle, so no side can be chosen.
    """


class AntipodalPairError(DegenerateGeometryError):
    """
    Raised when a pair of antipodal points makes a geodesic undefined.
    """


class ConvergenceError(CoverError, ArithmeticError):
    """
    Raised when adaptive quadrature does not reach the requested tolerance.

    Args:
        message (str): Description of the failing integral.
        estimate (float): Best estimate reached.
        error_bound (float): Error bound reported by the integrator.
    """
    def __init__(self, message: str, estimate: float, error_bound: float) -> None:
        super().__init__(f"{message} (best estimate {estimate:.17g}, error bound {error_bound:.3g})")
        self.estimate: float = estimate
        self.error_bound: float = error_bound


class HistogramIOError(CoverError, OSError):
    """
    Raised when a histogram CSV cannot be written or read.
    """
    def __init__(self, message: str, path: str) -> None:
        super().__init__(f"{message}: {path}")
        self.path: str = path
