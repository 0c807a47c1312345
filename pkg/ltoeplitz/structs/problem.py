import math
from typing import Literal

import msgspec

from ltoeplitz.constants import Limits, Tolerance
from ltoeplitz.structs.curve import Kind
from ltoeplitz.structs.moebius import MoebiusAutomorphism
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

# complex numbers travel as [re, im]
Pair = tuple[float, float]


def _finite(*values: float) -> bool:
    return all(math.isfinite(value) for value in values)


def to_pair(z: complex) -> Pair:
    z = complex(z)
    return (z.real, z.imag)


def from_pair(pair: Pair) -> complex:
    return complex(pair[0], pair[1])


class SymbolDoc(msgspec.Struct):
    coeffs: list[tuple[int, float, float]]

    def __post_init__(self) -> None:
        for n, re, im in self.coeffs:
            if abs(n) > Limits.MAX_DEGREE:
                raise ValueError(f"coefficient index {n} outside [-{Limits.MAX_DEGREE}, {Limits.MAX_DEGREE}]")
            if not _finite(re, im):
                raise ValueError(f"coefficient {n} is not finite")

    @classmethod
    def from_symbol(cls, s: FourierSymbol) -> "SymbolDoc":
        return cls([(n, value.real, value.imag) for n, value in s.items()])

    def to_symbol(self) -> FourierSymbol:
        coeffs: dict[int, complex] = {}
        for n, re, im in self.coeffs:
            coeffs[n] = coeffs.get(n, 0j) + complex(re, im)
        return FourierSymbol.from_dict(coeffs)


class RotationDoc(msgspec.Struct):
    p: int
    q: int

    def __post_init__(self) -> None:
        self.to_rotation()

    def to_rotation(self) -> RationalRotation:
        return RationalRotation(self.p, self.q)


class AutomorphismDoc(msgspec.Struct):
    alpha: float
    w: Pair

    def __post_init__(self) -> None:
        self.to_automorphism()

    def to_automorphism(self) -> MoebiusAutomorphism:
        return MoebiusAutomorphism(self.alpha, from_pair(self.w))


class GridDoc(msgspec.Struct):
    box: tuple[float, float, float, float]
    resolution: int

    def __post_init__(self) -> None:
        re_min, re_max, im_min, im_max = self.box
        if not _finite(*self.box) or re_min >= re_max or im_min >= im_max:
            raise ValueError(f"invalid box {self.box}")
        if not 1 <= self.resolution <= Limits.MAX_RESOLUTION:
            raise ValueError(f"resolution must lie in [1, {Limits.MAX_RESOLUTION}]")


class Tolerances(msgspec.Struct):
    curve: float = Tolerance.CURVE
    on_curve: float = Tolerance.ON_CURVE
    sup_norm: float = Tolerance.SUP_NORM
    max_order: int = Limits.MAX_ORDER

    def __post_init__(self) -> None:
        if not all(value > 0 and math.isfinite(value) for value in (self.curve, self.on_curve, self.sup_norm)):
            raise ValueError("tolerances must be positive and finite")
        if self.max_order < 1:
            raise ValueError("max_order must be positive")


class ProblemSpec(msgspec.Struct, forbid_unknown_fields=True):
    kind: Literal["lambda_toeplitz", "wco"]
    symbol: SymbolDoc
    rotation: RotationDoc | None = None
    automorphism: AutomorphismDoc | None = None
    queries: list[Pair] = []
    grid: GridDoc | None = None
    tolerances: Tolerances = msgspec.field(default_factory=Tolerances)

    def __post_init__(self) -> None:
        if self.kind == "lambda_toeplitz" and (self.rotation is None or self.automorphism is not None):
            raise ValueError("lambda_toeplitz problems take a rotation and no automorphism")
        if self.kind == "wco" and (self.automorphism is None or self.rotation is not None):
            raise ValueError("wco problems take an automorphism and no rotation")
        for re, im in self.queries:
            if not _finite(re, im):
                raise ValueError("queries must be finite")

    @property
    def mus(self) -> list[complex]:
        return [from_pair(pair) for pair in self.queries]


class ClassificationRecord(msgspec.Struct, omit_defaults=True):
    mu: Pair
    kind: Kind
    distance: float
    index: int | None = None


class Scalars(msgspec.Struct, omit_defaults=True):
    ess_radius: float
    sup_norm_twisted: float
    spectral_radius: float | None = None
    operator_norm_estimate: float | None = None


class Provenance(msgspec.Struct):
    version: str
    tolerances: Tolerances
    sample_counts: dict[str, int]
    # certified enclosure widths; above the sup_norm tolerance when sampling hit its cap
    bracket_widths: dict[str, float] = {}


class ReductionDoc(msgspec.Struct, rename={"z0": "fixed_point", "lam": "multiplier"}):
    z0: Pair
    lam: Pair
    p: int
    q: int
    pullback_degree: int


class SigmaMinRow(msgspec.Struct):
    mu: Pair
    values: list[float]


class ValidationBlock(msgspec.Struct, omit_defaults=True):
    schedule: list[int]
    factorization_error: list[float]
    shift_relation_error: list[float]
    op_norm: list[float]
    sigma_min: list[SigmaMinRow]
    power_identity_error: list[float] | None = None


class ResultDoc(msgspec.Struct, omit_defaults=True):
    kind: Literal["lambda_toeplitz", "wco"]
    records: list[ClassificationRecord]
    scalars: Scalars
    provenance: Provenance
    reduction: ReductionDoc | None = None
    validation: ValidationBlock | None = None


class Diagnostics(msgspec.Struct):
    error: Literal["file", "parse", "validation", "computation"]
    message: str
    exit_code: int


class DiagnosticsDoc(msgspec.Struct):
    diagnostics: Diagnostics
