"""
Exceptions raised by the spectral toolkit
"""


class LToeplitzError(ValueError):
    pass


class NotAnalytic(LToeplitzError):
    """The symbol carries negative Fourier modes where an analytic one is required."""


class OutOfDomain(LToeplitzError):
    pass


class OnCurve(LToeplitzError):
    """The point lies within tolerance of the curve, so the winding number is undefined."""

    def __init__(self, point: complex, distance: float) -> None:
        super().__init__(f"{point} is {distance:.3e} from the curve")
        self.point = point
        self.distance = distance


class NonIntegralIndex(LToeplitzError):
    def __init__(self, winding: int, q: int) -> None:
        super().__init__(f"winding number {winding} is not divisible by q = {q}")
        self.winding = winding
        self.q = q


class UnderResolved(LToeplitzError):
    pass


class DimensionTooLarge(LToeplitzError):
    pass


class NotElliptic(LToeplitzError):
    pass


class NotFiniteOrder(LToeplitzError):
    pass


class TailTooLarge(LToeplitzError):
    def __init__(self, degree: int, residual: float) -> None:
        super().__init__(f"truncation at degree {degree} leaves residual {residual:.3e}")
        self.degree = degree
        self.residual = residual


class SnapError(LToeplitzError):
    pass


class TrichotomyViolation(AssertionError):
    """Fredholm of index zero yet not invertible: ruled out for analytic C^1 symbols."""
