"""
Essential spectra, Fredholm indices and full spectra of lambda-Toeplitz
operators with root-of-unity lambda
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ltoeplitz import symbolkit
from ltoeplitz.constants import Kinds, Limits, Sampling, Tolerance, kind_codes
from ltoeplitz.errors import (
    LToeplitzError,
    NonIntegralIndex,
    NotAnalytic,
    OnCurve,
    OutOfDomain,
    TrichotomyViolation,
    UnderResolved,
)
from ltoeplitz.structs.curve import (
    CurveSamples,
    Membership,
    RegionRaster,
    SpectralClassification,
)
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

logger = logging.getLogger(__name__)


def sample_curve(s: FourierSymbol, count: int = Sampling.WINDING_START) -> CurveSamples:
    return CurveSamples.from_source(lambda thetas: symbolkit.evaluate(s, thetas), count)


def _argument_steps(values: np.ndarray) -> np.ndarray:
    return np.angle(np.roll(values, -1, axis=-1) / values)


def winding_number(c: CurveSamples, w: complex = 0, tol: float = Tolerance.ON_CURVE) -> int:
    """
    Winding number of the closed curve about w by summing principal
    argument increments.

    Curves with a resampling source are doubled until every step stays
    below pi/2 and the count agrees over two consecutive doublings.
    """
    if not c.closed:
        raise ValueError("winding numbers are defined for closed curves only")

    history: list[int | None] = []
    curve = c
    while True:
        shifted = curve.values - w
        distance = float(np.min(np.abs(shifted)))
        if distance < tol:
            raise OnCurve(w, distance)

        steps = _argument_steps(shifted)
        winding = round(float(np.sum(steps)) / (2 * math.pi))
        resolved = float(np.max(np.abs(steps))) < math.pi / 2
        history.append(winding if resolved else None)

        if curve.source is None:
            if resolved:
                return winding
            raise UnderResolved(f"argument steps reach {np.max(np.abs(steps)):.3f} on {curve.count} samples")
        if len(history) >= 3 and history[-1] is not None and history[-3:].count(history[-1]) == 3:
            return winding
        if curve.count * 2 > Sampling.WINDING_MAX:
            if resolved:
                logger.warning("winding about %s not confirmed by doubling at %d samples", w, curve.count)
                return winding
            raise UnderResolved(f"argument steps unresolved at {curve.count} samples")

        logger.debug("winding about %s: %s at %d samples, doubling", w, winding, curve.count)
        curve = curve.doubled()


def _target(mu: complex, q: int) -> tuple[complex, float]:
    """mu^q with its modulus."""
    try:
        target = complex(mu) ** q
        return target, abs(target)
    except OverflowError as error:
        raise OutOfDomain(f"({mu})^{q} overflows") from error


def _far_field(prod: FourierSymbol, modulus: float) -> bool:
    return modulus > Sampling.FAR_FIELD * float(np.sum(np.abs(prod.coeffs)))


def ess_membership(
    prod: FourierSymbol, r: RationalRotation, mu: complex, tol: float = Tolerance.CURVE
) -> Membership:
    """mu is in the essential spectrum iff mu^q lies on the product-symbol curve."""
    target, modulus = _target(mu, r.q)
    if _far_field(prod, modulus):
        return Membership(False, modulus)
    bracket = symbolkit.distance_bracket(prod, target, threshold=tol)
    return Membership(bracket.value <= tol, bracket.value)


def _index(prod: FourierSymbol, r: RationalRotation, target: complex, tol: float) -> int:
    winding = winding_number(sample_curve(prod), target, tol)
    if winding % r.q:
        raise NonIntegralIndex(winding, r.q)
    return -(winding // r.q)


def fredholm_index(
    prod: FourierSymbol, r: RationalRotation, mu: complex, tol: float = Tolerance.ON_CURVE
) -> int:
    """ind(T - mu) = -wn(prod - mu^q) / q."""
    target, modulus = _target(mu, r.q)
    if _far_field(prod, modulus):
        return 0
    return _index(prod, r, target, tol)


def interior_root_count(prod: FourierSymbol, w: complex) -> int:
    """Roots of the Taylor polynomial of ``prod`` equal to w inside |z| < 1, with multiplicity."""
    if not symbolkit.is_analytic(prod):
        raise NotAnalytic("root counting needs an analytic symbol")
    coeffs = prod.analytic_coeffs()
    coeffs[0] -= w
    roots = np.roots(coeffs[::-1])
    return int(np.count_nonzero(np.abs(roots) < 1))


def _guard_trichotomy(prod: FourierSymbol, target: complex, distance: float) -> None:
    if prod.degree > Sampling.ROOT_GUARD_DEGREE or distance < Sampling.ROOT_GUARD_DISTANCE:
        return
    roots = interior_root_count(prod, target)
    if roots:
        raise TrichotomyViolation(
            f"index 0 at {target} yet {roots} interior roots: Fredholm, index zero and not invertible"
        )


def classify(
    prod: FourierSymbol,
    r: RationalRotation,
    mu: complex,
    tol: float = Tolerance.CURVE,
    on_curve: float = Tolerance.ON_CURVE,
) -> SpectralClassification:
    """
    Place mu in the resolvent, the essential spectrum or a Fredholm hole.

    Every decision consumes mu^q only, so the result is invariant under
    multiplying mu by a q-th root of unity. Points farther than ``tol`` from
    the curve get their index from a winding number that raises OnCurve
    when the curve comes within ``on_curve`` of mu^q.
    """
    if not symbolkit.is_analytic(prod):
        raise NotAnalytic("spectrum classification needs an analytic symbol")

    target, modulus = _target(mu, r.q)
    if _far_field(prod, modulus):
        return SpectralClassification(Kinds.RESOLVENT, modulus)

    distance = symbolkit.distance_bracket(prod, target, threshold=tol).value
    if distance <= min(tol, Tolerance.ESSENTIAL):
        return SpectralClassification(Kinds.ESSENTIAL, distance)
    if distance <= tol:
        return SpectralClassification(Kinds.NEAR, distance)

    index = _index(prod, r, target, on_curve)
    if index:
        return SpectralClassification(Kinds.HOLE, distance, index)

    _guard_trichotomy(prod, target, distance)
    return SpectralClassification(Kinds.RESOLVENT, distance)


def ess_radius(prod: FourierSymbol, r: RationalRotation) -> float:
    """r_e = ||prod||_inf^{1/q}."""
    return symbolkit.sup_norm(prod) ** (1 / r.q)


def spectral_radius(prod: FourierSymbol, r: RationalRotation) -> float:
    """For analytic symbols the spectrum is the closure of the image of the disc, so r = r_e."""
    if not symbolkit.is_analytic(prod):
        raise NotAnalytic("the spectral radius formula needs an analytic symbol")
    return ess_radius(prod, r)


def essential_norm(psi: FourierSymbol, r: RationalRotation, k: int) -> float:
    """||T^k||_e = ||prod_{j<k} psi o tau_bar^j||_inf."""
    return symbolkit.sup_norm(symbolkit.product_symbol(psi, r, k))


def jury_determinant(
    fs: Sequence[FourierSymbol], r: RationalRotation, samples: int = Sampling.WINDING_START
) -> CurveSamples:
    """
    Samples of h_T = det[f_{(j-k) mod q} o tau_bar^k]_{k,j} for
    T = sum_j T_{f_j} C_rho^j with rho = tau_bar.
    """
    q = r.q
    if len(fs) != q:
        raise ValueError(f"expected {q} symbols, got {len(fs)}")
    rotated = [[symbolkit.rotate(f, r, k) for f in fs] for k in range(q)]

    def determinant(thetas: np.ndarray) -> np.ndarray:
        blocks = np.empty((thetas.size, q, q), dtype=np.complex128)
        for k in range(q):
            for j in range(q):
                blocks[:, k, j] = symbolkit.evaluate(rotated[k][(j - k) % q], thetas)
        return np.linalg.det(blocks)

    return CurveSamples.from_source(determinant, samples)


def resolvent_determinant(
    psi: FourierSymbol, r: RationalRotation, mu: complex, samples: int = Sampling.WINDING_START
) -> CurveSamples:
    """Jury data for T_psi - mu C_tau_bar: f_0 = psi, f_{q-1} = -mu, the rest zero."""
    if r.q == 1:
        return jury_determinant([psi - FourierSymbol.constant(mu)], r, samples)
    fs = [psi] + [FourierSymbol.zero()] * (r.q - 2) + [FourierSymbol.constant(-mu)]
    return jury_determinant(fs, r, samples)


def jury_index(c: CurveSamples, r: RationalRotation, tol: float = Tolerance.ON_CURVE) -> int:
    """Fredholm index -wn(h_T)/q; the determinant must not vanish on the circle."""
    winding = winding_number(c, 0, tol)
    if winding % r.q:
        raise NonIntegralIndex(winding, r.q)
    return -(winding // r.q)


def _screen_count(prod: FourierSymbol) -> tuple[int, float]:
    degree = prod.degree
    bound = symbolkit.sup_norm_bracket(prod).upper
    wanted = max(Sampling.MIN_POINTS, Sampling.POINTS_PER_DEGREE * degree)
    if degree:
        wanted = max(wanted, math.ceil(2 * math.pi * degree * bound / Sampling.SCREEN_BAND))
    count = min(1 << (wanted - 1).bit_length(), Sampling.MAX_POINTS)
    # curve points between samples stay within one step of a sample
    return count, 2 * math.pi * degree * bound / count


def region_grid(
    prod: FourierSymbol,
    r: RationalRotation,
    box: tuple[float, float, float, float],
    resolution: int,
    tol: float = Tolerance.CURVE,
    on_curve: float = Tolerance.ON_CURVE,
    workers: int | None = None,
) -> RegionRaster:
    """
    Classify every node of a resolution x resolution grid over ``box``.

    Nodes are screened in bulk against one fine sampling of the curve; only
    nodes the screen cannot settle go through ``classify``. Per-node errors
    (an overflowing mu^q, or the curve passing within ``on_curve``)
    become NearBoundary markers.
    """
    if not 1 <= resolution <= Limits.MAX_RESOLUTION:
        raise ValueError(f"resolution must lie in [1, {Limits.MAX_RESOLUTION}], got {resolution}")
    re_min, re_max, im_min, im_max = box
    if not (re_min < re_max and im_min < im_max):
        raise ValueError(f"degenerate box {box}")
    if not symbolkit.is_analytic(prod):
        raise NotAnalytic("spectrum classification needs an analytic symbol")

    count, step = _screen_count(prod)
    curve = symbolkit.sample(prod, count)
    reals = np.linspace(re_min, re_max, resolution)
    imags = np.linspace(im_max, im_min, resolution)
    logger.debug("screening %d^2 nodes against %d curve samples", resolution, count)

    def screen(row: int) -> tuple[np.ndarray, np.ndarray]:
        codes = np.empty(resolution, dtype=np.uint8)
        indices = np.zeros(resolution, dtype=np.int64)
        mus = reals + 1j * imags[row]
        for start in range(0, resolution, Sampling.SCREEN_CHUNK):
            chunk = mus[start:start + Sampling.SCREEN_CHUNK]
            with np.errstate(over="ignore", invalid="ignore"):
                shifted = curve[None, :] - (chunk ** r.q)[:, None]
            distance = np.min(np.abs(shifted), axis=1)
            settled = distance > max(tol, on_curve) + step
            with np.errstate(divide="ignore", invalid="ignore"):
                steps = _argument_steps(shifted)
                winding = np.rint(np.sum(steps, axis=1) / (2 * math.pi)).astype(np.int64)
            settled &= np.max(np.abs(steps), axis=1) < math.pi / 2
            settled &= winding % r.q == 0

            for offset, mu in enumerate(chunk):
                col = start + offset
                if settled[offset]:
                    index = -(int(winding[offset]) // r.q)
                    codes[col] = kind_codes[Kinds.HOLE if index else Kinds.RESOLVENT]
                    indices[col] = index
                    continue
                try:
                    result = classify(prod, r, mu, tol, on_curve)
                except LToeplitzError as error:
                    logger.debug("node %s marked near boundary: %s", mu, error)
                    codes[col] = kind_codes[Kinds.NEAR]
                    continue
                codes[col] = kind_codes[result.kind]
                indices[col] = result.index or 0
        return codes, indices

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(screen, range(resolution)))

    return RegionRaster(
        (float(re_min), float(re_max), float(im_min), float(im_max)),
        resolution,
        np.stack([codes for codes, _ in rows]),
        np.stack([indices for _, indices in rows]),
    )
