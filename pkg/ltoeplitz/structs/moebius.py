import cmath
import math

import msgspec


class MoebiusAutomorphism(msgspec.Struct, frozen=True):
    """rho(z) = e^{i alpha} (w - z) / (1 - conj(w) z), |w| < 1."""

    alpha: float
    w: complex

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and cmath.isfinite(self.w)):
            raise ValueError("automorphism parameters must be finite")
        if not 0 <= self.alpha < 2 * math.pi:
            raise ValueError(f"alpha must lie in [0, 2 pi), got {self.alpha}")
        if abs(self.w) >= 1:
            raise ValueError(f"|w| must be < 1, got {abs(self.w)}")

    @classmethod
    def canonical(cls, alpha: float, w: complex) -> "MoebiusAutomorphism":
        """Wraps alpha into [0, 2 pi)."""
        alpha = math.fmod(alpha, 2 * math.pi)
        if alpha < 0:
            alpha += 2 * math.pi
        if alpha >= 2 * math.pi:
            alpha = 0.0
        return cls(alpha, complex(w))

    @property
    def phase(self) -> complex:
        return cmath.exp(1j * self.alpha)
