"""
Weighted composition operators W_{phi,rho} with rho an elliptic disc
automorphism of finite order, reduced to lambda-Toeplitz form by Moebius
conjugation
"""

import cmath
import logging
import math

import msgspec
import numpy as np

from ltoeplitz import spectra, symbolkit
from ltoeplitz.constants import Limits, Sampling, Tolerance
from ltoeplitz.errors import NotAnalytic, NotElliptic, NotFiniteOrder, TailTooLarge
from ltoeplitz.structs.curve import SpectralClassification, equispaced
from ltoeplitz.structs.moebius import MoebiusAutomorphism
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

logger = logging.getLogger(__name__)


def moebius_eval(m: MoebiusAutomorphism, z):
    """e^{i alpha} (w - z) / (1 - conj(w) z)."""
    return m.phase * (m.w - z) / (1 - m.w.conjugate() * z)


def identity() -> MoebiusAutomorphism:
    return MoebiusAutomorphism(math.pi, 0j)


def rotation(lam: complex) -> MoebiusAutomorphism:
    """z -> lam z."""
    return MoebiusAutomorphism.canonical(cmath.phase(-lam), 0j)


def _matrix(m: MoebiusAutomorphism) -> np.ndarray:
    return np.array([[-m.phase, m.phase * m.w], [-m.w.conjugate(), 1]], dtype=np.complex128)


def _from_matrix(matrix: np.ndarray) -> MoebiusAutomorphism:
    (a, b), (c, d) = matrix / matrix[1, 1]
    phase = -a / abs(a)
    return MoebiusAutomorphism.canonical(cmath.phase(phase), complex(b / phase))


def compose(m1: MoebiusAutomorphism, m2: MoebiusAutomorphism) -> MoebiusAutomorphism:
    """m1 o m2."""
    return _from_matrix(_matrix(m1) @ _matrix(m2))


def inverse(m: MoebiusAutomorphism) -> MoebiusAutomorphism:
    (a, b), (c, d) = _matrix(m)
    return _from_matrix(np.array([[d, -b], [-c, a]]))


def conjugate_by(rho: MoebiusAutomorphism, zeta: MoebiusAutomorphism) -> MoebiusAutomorphism:
    """zeta^{-1} o rho o zeta."""
    return compose(inverse(zeta), compose(rho, zeta))


def fixed_point(rho: MoebiusAutomorphism) -> complex:
    """
    The fixed point inside the disc, from conj(w) z^2 - (1 + e^{i alpha}) z + e^{i alpha} w = 0.

    The identity fixes everything and reports 0.
    """
    if rho.w == 0:
        return 0j

    a = rho.w.conjugate()
    b = -(1 + rho.phase)
    c = rho.phase * rho.w
    root = cmath.sqrt(b * b - 4 * a * c)
    if abs(b - root) > abs(b + root):
        root = -root
    half = -(b + root) / 2

    for z in (half / a, c / half):
        if abs(z) < 1 - Tolerance.ELLIPTIC:
            return complex(z)
    raise NotElliptic(f"{rho} has no fixed point inside the disc")


def multiplier_and_order(
    rho: MoebiusAutomorphism, max_order: int = Limits.MAX_ORDER
) -> tuple[complex, int]:
    """lambda = rho'(z0) at the interior fixed point and its order q."""
    z0 = fixed_point(rho)
    lam = rho.phase * (abs(rho.w) ** 2 - 1) / (1 - rho.w.conjugate() * z0) ** 2
    if abs(abs(lam) - 1) >= Tolerance.UNIT_MODULUS:
        raise NotElliptic(f"multiplier {lam} at {z0} is not unimodular")

    for q in range(1, max_order + 1):
        if abs(lam**q - 1) < Tolerance.ROTATION_ORDER:
            return lam, q
    raise NotFiniteOrder(f"multiplier {lam} has no order up to {max_order}")


def conjugator(z0: complex) -> MoebiusAutomorphism:
    """The involution (z0 - z) / (1 - conj(z0) z) swapping 0 and z0."""
    return MoebiusAutomorphism(0.0, complex(z0))


def pullback_symbol(phi: FourierSymbol, zeta: MoebiusAutomorphism, degree: int) -> FourierSymbol:
    """
    Taylor coefficients of phi o zeta^{-1} up to ``degree``, recovered from
    circle samples by FFT. The dropped tail must leave a sample residual
    below 1e-8.
    """
    if not symbolkit.is_analytic(phi):
        raise NotAnalytic("pullback needs an analytic symbol")

    wanted = max(Sampling.PULLBACK_MIN, Sampling.PULLBACK_PER_DEGREE * degree)
    count = 1 << (wanted - 1).bit_length()
    points = moebius_eval(inverse(zeta), np.exp(1j * equispaced(count)))
    values = np.polyval(phi.analytic_coeffs()[::-1], points)

    kept = np.fft.fft(values)[:degree + 1] / count
    pulled = FourierSymbol.from_array(kept)
    residual = float(np.max(np.abs(symbolkit.sample(pulled, count) - values)))
    if residual >= Tolerance.PULLBACK_TAIL:
        raise TailTooLarge(degree, residual)
    return pulled


def adaptive_pullback(phi: FourierSymbol, zeta: MoebiusAutomorphism) -> FourierSymbol:
    degree = Limits.PULLBACK_START
    while True:
        try:
            return pullback_symbol(phi, zeta, degree)
        except TailTooLarge as error:
            if degree * 2 > Limits.PULLBACK_MAX:
                raise
            logger.debug("%s, doubling pullback degree", error)
            degree *= 2


class Reduction(msgspec.Struct, frozen=True, eq=False):
    """Every intermediate of W_{phi,rho} ~ T_{lambda, phi o zeta}."""

    fixed_point: complex
    multiplier: complex
    rotation: RationalRotation
    zeta: MoebiusAutomorphism
    pulled: FourierSymbol
    product: FourierSymbol

    @property
    def twisted(self) -> FourierSymbol:
        return symbolkit.twist(self.pulled, self.rotation)


def reduce(
    phi: FourierSymbol,
    rho: MoebiusAutomorphism,
    max_order: int = Limits.MAX_ORDER,
    zeta: MoebiusAutomorphism | None = None,
) -> Reduction:
    """
    Conjugate rho to the rotation z -> lambda z and pull phi back.

    ``zeta`` overrides the standard involution at the fixed point; any
    automorphism sending 0 to the fixed point gives the same spectrum.
    """
    z0 = fixed_point(rho)
    lam, q = multiplier_and_order(rho, max_order)
    rotation_ = RationalRotation.from_multiplier(lam, q)
    if zeta is None:
        zeta = conjugator(z0)
    elif abs(moebius_eval(zeta, 0) - z0) >= Tolerance.ROTATION_ORDER:
        raise ValueError(f"conjugator must send 0 to the fixed point {z0}")

    # zeta^{-1} o rho o zeta is the rotation, so the weight transported with it is phi o zeta
    pulled = adaptive_pullback(phi, inverse(zeta))
    # pulled is analytic, so twisting is composition with tau_bar
    product = symbolkit.product_symbol(symbolkit.twist(pulled, rotation_), rotation_, q)
    logger.debug("reduced to q = %d, pullback degree %d", q, pulled.degree)
    return Reduction(z0, lam, rotation_, zeta, pulled, product)


def wco_classify(
    phi: FourierSymbol,
    rho: MoebiusAutomorphism,
    mu: complex,
    tol: float = Tolerance.CURVE,
    on_curve: float = Tolerance.ON_CURVE,
    max_order: int = Limits.MAX_ORDER,
    zeta: MoebiusAutomorphism | None = None,
) -> SpectralClassification:
    reduction = reduce(phi, rho, max_order, zeta)
    return spectra.classify(reduction.product, reduction.rotation, mu, tol, on_curve)
