import cmath
import math
from typing import Iterator, Mapping

import msgspec
import numpy as np

from ltoeplitz.constants import Tolerance
from ltoeplitz.errors import SnapError


def root_of_unity(k: int, q: int) -> complex:
    """exp(2*pi*i*k/q), exact on the axes."""
    k %= q
    if (4 * k) % q == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * k // q]
    return cmath.exp(2j * math.pi * k / q)


def _normalized(values: np.ndarray, low: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.complex128).ravel()
    values = np.where(np.abs(values) < Tolerance.CLEANUP, 0, values)
    support = np.flatnonzero(values)
    if support.size == 0:
        return np.zeros(1, dtype=np.complex128)

    indices = support + low
    degree = int(np.max(np.abs(indices)))
    out = np.zeros(2 * degree + 1, dtype=np.complex128)
    out[indices + degree] = values[support]
    return out


class FourierSymbol(msgspec.Struct, frozen=True, eq=False):
    """
    Trigonometric polynomial sum_{|n| <= M} a_n e^{in theta}.

    ``coeffs[n + degree]`` holds a_n. Build through the classmethods so the
    table is trimmed to its true degree and cleaned of sub-1e-15 entries.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.coeffs.ndim != 1 or self.coeffs.size % 2 != 1:
            raise ValueError("coefficient table must be one-dimensional with odd length")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coefficients must be finite")
        self.coeffs.setflags(write=False)

    @classmethod
    def from_array(cls, values, low: int = 0) -> "FourierSymbol":
        """``values[k]`` is the coefficient at index ``low + k``."""
        return cls(_normalized(values, low))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex]) -> "FourierSymbol":
        if not coeffs:
            return cls.zero()
        low = min(coeffs)
        values = np.zeros(max(coeffs) - low + 1, dtype=np.complex128)
        for n, value in coeffs.items():
            values[n - low] += value
        return cls.from_array(values, low)

    @classmethod
    def constant(cls, value: complex) -> "FourierSymbol":
        return cls.from_array([value])

    @classmethod
    def monomial(cls, n: int, value: complex = 1) -> "FourierSymbol":
        return cls.from_array([value], n)

    @classmethod
    def zero(cls) -> "FourierSymbol":
        return cls(np.zeros(1, dtype=np.complex128))

    @property
    def degree(self) -> int:
        return self.coeffs.size // 2

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.degree, self.degree + 1)

    def coefficient(self, n: int) -> complex:
        if abs(n) > self.degree:
            return 0j
        return complex(self.coeffs[n + self.degree])

    def items(self) -> Iterator[tuple[int, complex]]:
        for n, value in zip(self.indices, self.coeffs):
            if value != 0:
                yield int(n), complex(value)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def analytic_coeffs(self) -> np.ndarray:
        """a_0, a_1, ..., a_M."""
        return self.coeffs[self.degree:].copy()

    def isclose(self, other: "FourierSymbol", atol: float = Tolerance.COMPARE) -> bool:
        degree = max(self.degree, other.degree)
        return bool(np.allclose(self.padded(degree), other.padded(degree), rtol=0, atol=atol))

    def padded(self, degree: int) -> np.ndarray:
        """Coefficients a_{-degree} .. a_{degree}, zero filled."""
        if degree < self.degree:
            raise ValueError(f"cannot pad degree {self.degree} down to {degree}")
        out = np.zeros(2 * degree + 1, dtype=np.complex128)
        out[degree - self.degree:degree + self.degree + 1] = self.coeffs
        return out

    def __add__(self, other: "FourierSymbol") -> "FourierSymbol":
        degree = max(self.degree, other.degree)
        return FourierSymbol.from_array(self.padded(degree) + other.padded(degree), -degree)

    def __sub__(self, other: "FourierSymbol") -> "FourierSymbol":
        degree = max(self.degree, other.degree)
        return FourierSymbol.from_array(self.padded(degree) - other.padded(degree), -degree)

    def __neg__(self) -> "FourierSymbol":
        return FourierSymbol(-self.coeffs)

    def scaled(self, factor: complex) -> "FourierSymbol":
        return FourierSymbol.from_array(self.coeffs * factor, -self.degree)

    def __repr__(self) -> str:
        terms = ", ".join(f"{n}: {value:.6g}" for n, value in self.items())
        return f"FourierSymbol({{{terms}}})"


class RationalRotation(msgspec.Struct, frozen=True):
    """lambda = exp(2*pi*i*p/q) with p/q in lowest terms."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        if not 0 <= self.p < self.q:
            raise ValueError(f"p must lie in [0, q), got p = {self.p}, q = {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @classmethod
    def identity(cls) -> "RationalRotation":
        return cls(0, 1)

    @classmethod
    def from_multiplier(cls, lam: complex, q: int) -> "RationalRotation":
        """Snap a unimodular multiplier of order q to its exact rational phase."""
        p = round(cmath.phase(lam) * q / (2 * math.pi)) % q
        if math.gcd(p, q) != 1:
            raise SnapError(f"phase of {lam} snaps to {p}/{q}, which is not of order {q}")
        rotation = cls(p, q)
        error = abs(rotation.lam - lam)
        if error >= Tolerance.PHASE_SNAP:
            raise SnapError(f"{lam} is {error:.3e} away from exp(2 pi i {p}/{q})")
        return rotation

    @property
    def lam(self) -> complex:
        return root_of_unity(self.p, self.q)

    def power(self, k: int) -> complex:
        """lambda^k, reduced mod q before exponentiating."""
        return root_of_unity(self.p * k, self.q)

    def powers(self, n: int) -> np.ndarray:
        """lambda^0, ..., lambda^{n-1}."""
        table = np.array([self.power(k) for k in range(self.q)], dtype=np.complex128)
        return table[np.arange(n) % self.q]

    def conjugate(self) -> "RationalRotation":
        return RationalRotation((self.q - self.p) % self.q, self.q)
