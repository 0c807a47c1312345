import math
from typing import Callable, Literal

import msgspec
import numpy as np

from ltoeplitz.constants import Kinds, Sampling, kind_codes

Kind = Literal["Resolvent", "EssentialSpectrum", "FredholmHole", "NearBoundary"]


def equispaced(count: int) -> np.ndarray:
    return 2 * math.pi * np.arange(count) / count


class CurveSamples(msgspec.Struct, frozen=True, eq=False):
    """
    Closed curve theta_i -> w_i sampled on the unit circle.

    ``source`` maps an array of angles to curve values; when present the
    curve can be resampled at twice the density for adaptive winding.
    """

    thetas: np.ndarray
    values: np.ndarray
    closed: bool = True
    source: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        if self.thetas.shape != self.values.shape or self.thetas.ndim != 1:
            raise ValueError("thetas and values must be matching one-dimensional arrays")
        if self.thetas.size < Sampling.CURVE_MIN:
            raise ValueError(f"a curve needs at least {Sampling.CURVE_MIN} samples, got {self.thetas.size}")
        if np.any(np.diff(self.thetas) <= 0):
            raise ValueError("thetas must be strictly increasing")
        if self.thetas[0] < 0 or self.thetas[-1] >= 2 * math.pi:
            raise ValueError("thetas must lie in [0, 2 pi)")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("curve values must be finite")

    @classmethod
    def from_source(cls, source: Callable[[np.ndarray], np.ndarray], count: int) -> "CurveSamples":
        thetas = equispaced(count)
        return cls(thetas, np.asarray(source(thetas), dtype=np.complex128), True, source)

    @property
    def count(self) -> int:
        return self.thetas.size

    def doubled(self) -> "CurveSamples | None":
        if self.source is None:
            return None
        return CurveSamples.from_source(self.source, 2 * self.count)

    def shifted(self, w: complex) -> "CurveSamples":
        """The curve theta -> value - w."""
        source = None
        if self.source is not None:
            inner = self.source
            source = lambda thetas: inner(thetas) - w  # noqa: E731
        return CurveSamples(self.thetas, self.values - w, self.closed, source)


class SpectralClassification(msgspec.Struct, frozen=True, omit_defaults=True):
    kind: Kind
    distance: float
    index: int | None = None

    def __post_init__(self) -> None:
        if self.distance < 0:
            raise ValueError("distance must be non-negative")
        if self.kind == Kinds.HOLE and not self.index:
            raise ValueError("a Fredholm hole carries a non-zero index")
        if self.kind != Kinds.HOLE and self.index is not None:
            raise ValueError(f"{self.kind} carries no index")

    @property
    def in_spectrum(self) -> bool:
        return self.kind in (Kinds.ESSENTIAL, Kinds.HOLE)


class Bracket(msgspec.Struct, frozen=True):
    """An extremum with its certified enclosure and the sample count that produced it."""

    value: float
    lower: float
    upper: float
    samples: int

    @property
    def width(self) -> float:
        return self.upper - self.lower


class Membership(msgspec.Struct, frozen=True):
    member: bool
    distance: float

    def __bool__(self) -> bool:
        return self.member


class RegionRaster(msgspec.Struct, frozen=True, eq=False):
    """
    Classification grid. Row 0 is the top edge (im_max), column 0 the left
    edge (re_min); ``codes`` index into ``Kinds.ALL``.
    """

    box: tuple[float, float, float, float]
    resolution: int
    codes: np.ndarray
    indices: np.ndarray

    @property
    def reals(self) -> np.ndarray:
        return np.linspace(self.box[0], self.box[1], self.resolution)

    @property
    def imags(self) -> np.ndarray:
        return np.linspace(self.box[3], self.box[2], self.resolution)

    def node(self, row: int, col: int) -> complex:
        return complex(self.reals[col], self.imags[row])

    def kind(self, row: int, col: int) -> str:
        return Kinds.ALL[self.codes[row, col]]

    def mask(self, *kinds: str) -> np.ndarray:
        return np.isin(self.codes, [kind_codes[kind] for kind in kinds])

    def counts(self) -> dict[str, int]:
        return {kind: int(np.count_nonzero(self.codes == kind_codes[kind])) for kind in Kinds.ALL}
