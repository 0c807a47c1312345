"""
Symbol algebra for trigonometric polynomials: projection, lambda-twisting,
rotation, products, the Gelfand transform and certified extrema
"""

import logging
import math
from functools import reduce

import numpy as np
from scipy.optimize import minimize_scalar

from ltoeplitz.constants import Sampling, Tolerance
from ltoeplitz.errors import NotAnalytic, OutOfDomain
from ltoeplitz.structs.curve import Bracket
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

logger = logging.getLogger(__name__)


def evaluate(s: FourierSymbol, theta):
    """sum_n a_n e^{in theta}; ``theta`` may be a scalar or an array."""
    theta = np.asarray(theta, dtype=np.float64)
    z = np.exp(1j * theta)
    values = np.polyval(s.coeffs[::-1], z) * np.exp(-1j * s.degree * theta)
    if values.ndim == 0:
        return complex(values)
    return values


def sample(s: FourierSymbol, count: int) -> np.ndarray:
    """Values at theta_k = 2 pi k / count; aliasing is folded in, so exact for any count."""
    folded = np.zeros(count, dtype=np.complex128)
    np.add.at(folded, s.indices % count, s.coeffs)
    return count * np.fft.ifft(folded)


def is_analytic(s: FourierSymbol, tol: float = Tolerance.COMPARE) -> bool:
    negative = s.coeffs[:s.degree]
    return negative.size == 0 or float(np.max(np.abs(negative))) <= tol


def analytic_part(s: FourierSymbol) -> FourierSymbol:
    return FourierSymbol.from_array(s.analytic_coeffs())


def co_analytic_part(s: FourierSymbol) -> FourierSymbol:
    return FourierSymbol.from_array(s.coeffs[:s.degree], -s.degree)


def conjugate_symbol(s: FourierSymbol) -> FourierSymbol:
    """theta -> conj(s(theta)): conjugated coefficients on negated indices."""
    return FourierSymbol(np.conj(s.coeffs[::-1]))


def twist(s: FourierSymbol, r: RationalRotation) -> FourierSymbol:
    """b_n = conj(lambda)^n a_n for n >= 0, b_n = a_n for n < 0."""
    conj = r.conjugate()
    factors = np.array(
        [conj.power(int(n)) if n >= 0 else 1 for n in s.indices], dtype=np.complex128
    )
    return FourierSymbol.from_array(s.coeffs * factors, -s.degree)


def rotate(s: FourierSymbol, r: RationalRotation, j: int) -> FourierSymbol:
    """s composed with tau_bar^j: a_n -> conj(lambda)^{jn} a_n."""
    if j < 0:
        raise ValueError(f"rotation power must be non-negative, got {j}")
    factors = np.array([r.power(-j * int(n)) for n in s.indices], dtype=np.complex128)
    return FourierSymbol.from_array(s.coeffs * factors, -s.degree)


def multiply(s1: FourierSymbol, s2: FourierSymbol) -> FourierSymbol:
    return FourierSymbol.from_array(
        np.convolve(s1.coeffs, s2.coeffs), -(s1.degree + s2.degree)
    )


def product_symbol(psi: FourierSymbol, r: RationalRotation, k: int) -> FourierSymbol:
    """prod_{j=0}^{k-1} psi o tau_bar^j; for k = q its support lies in q*Z."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return reduce(multiply, (rotate(psi, r, j) for j in range(k)))


def gelfand_eval(s: FourierSymbol, z):
    """Taylor polynomial sum_{n >= 0} a_n z^n of an analytic symbol, |z| < 1."""
    if not is_analytic(s):
        raise NotAnalytic(f"{s!r} has negative Fourier modes")
    z = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(z) >= 1):
        raise OutOfDomain("the Gelfand transform is evaluated on the open disc only")
    values = np.polyval(s.analytic_coeffs()[::-1], z)
    if values.ndim == 0:
        return complex(values)
    return values


def _initial_count(degree: int, minimum: int = 0) -> int:
    count = max(Sampling.MIN_POINTS, Sampling.POINTS_PER_DEGREE * degree, minimum)
    return 1 << (count - 1).bit_length()


def _candidates(values: np.ndarray, maximize: bool) -> np.ndarray:
    """Grid indices of the strongest local extrema, best first."""
    signed = values if maximize else -values
    peaks = np.flatnonzero(
        (signed >= np.roll(signed, 1)) & (signed >= np.roll(signed, -1))
    )
    if peaks.size == 0:
        peaks = np.arange(values.size)
    order = np.argsort(-signed[peaks], kind="stable")
    return peaks[order[:Sampling.REFINE_CANDIDATES]]


def _refine(f: FourierSymbol, values: np.ndarray, maximize: bool) -> float:
    count = values.size
    step = 2 * math.pi / count
    sign = -1.0 if maximize else 1.0

    def objective(theta: float) -> float:
        return sign * abs(evaluate(f, theta))

    best = float(values.max() if maximize else values.min())
    for k in _candidates(values, maximize):
        centre = k * step
        result = minimize_scalar(
            objective,
            bounds=(centre - step, centre + step),
            method="bounded",
            options={"xatol": step * 1e-10},
        )
        found = sign * float(result.fun)
        best = max(best, found) if maximize else min(best, found)
    return best


def _cell_grid(cells: np.ndarray, step: float) -> np.ndarray:
    """Sampling.LOCAL_POINTS midpoints in each cell [k step - step/2, k step + step/2]."""
    offsets = step * ((np.arange(Sampling.LOCAL_POINTS) + 0.5) / Sampling.LOCAL_POINTS - 0.5)
    return (cells[:, None] * step + offsets[None, :]).ravel()


def _curvature(step: float, degree: int) -> float:
    # |F''| <= 4 M^2 ||f||^2 for F = |f|^2, and every point lies within step/2 of a node
    return (step * degree) ** 2 / 2


def _bracket(f: FourierSymbol, count: int, maximize: bool) -> Bracket:
    """
    Enclosure of max |f| or min |f| from ``count`` equispaced samples.

    The global grid rules out every cell whose node is too far from the
    extremum; the few cells left are resampled Sampling.LOCAL_POINTS times
    finer, which tightens the curvature term by that factor squared.
    """
    degree = f.degree
    values = np.abs(sample(f, count))
    step = 2 * math.pi / count
    curvature = _curvature(step, degree)
    fine = _curvature(step / Sampling.LOCAL_POINTS, degree)
    value = _refine(f, values, maximize)

    if maximize:
        if curvature >= 1:
            return Bracket(value, value, math.inf, count)
        peak = float(values.max())
        upper = peak / math.sqrt(1 - curvature)
        cells = np.flatnonzero(values >= peak * math.sqrt(1 - curvature))
        if cells.size <= Sampling.LOCAL_CELLS:
            local = float(np.max(np.abs(evaluate(f, _cell_grid(cells, step)))))
            value = max(value, local)
            upper = min(upper, local / math.sqrt(1 - fine))
        return Bracket(value, value, max(value, upper), count)

    # relative to the norm bound N the floor is (|f|/N)^2 - curvature
    norm = float(values.max()) / (1 - math.pi * degree / count)
    if norm == 0:
        return Bracket(0.0, 0.0, 0.0, count)
    relative = values / norm
    trough = float(relative.min())
    floor = trough**2 - curvature
    cells = np.flatnonzero(relative**2 <= trough**2 + curvature)
    if cells.size <= Sampling.LOCAL_CELLS:
        local = float(np.min(np.abs(evaluate(f, _cell_grid(cells, step)))))
        value = min(value, local)
        floor = max(floor, (local / norm) ** 2 - fine)
    return Bracket(value, norm * math.sqrt(max(floor, 0.0)), value, count)


def _extremum(
    f: FourierSymbol,
    maximize: bool,
    target: float,
    threshold: float | None = None,
) -> Bracket:
    degree = f.degree
    if degree == 0:
        value = abs(f.coefficient(0))
        return Bracket(value, value, value, 1)

    count = _initial_count(degree)
    while True:
        bracket = _bracket(f, count, maximize)
        if bracket.width < target:
            return bracket
        if threshold is not None and (bracket.lower > threshold or bracket.upper <= threshold):
            return bracket
        if count >= Sampling.MAX_POINTS:
            logger.warning(
                "extremum bracket width %.3e above %.1e at %d samples", bracket.width, target, count
            )
            return bracket

        logger.debug("bracket width %.3e at %d samples, doubling", bracket.width, count)
        count *= 2


def sup_norm_bracket(s: FourierSymbol, target: float = Tolerance.SUP_NORM) -> Bracket:
    return _extremum(s, True, target)


def sup_norm(s: FourierSymbol, target: float = Tolerance.SUP_NORM) -> float:
    """max_theta |s(theta)|, certified to ``target`` absolute error."""
    return sup_norm_bracket(s, target).value


def distance_bracket(
    s: FourierSymbol,
    w: complex,
    threshold: float | None = None,
    target: float = Tolerance.SUP_NORM,
) -> Bracket:
    """
    Certified min_theta |s(theta) - w|.

    With ``threshold`` set, sampling stops as soon as the bracket lies
    entirely on one side of it.
    """
    return _extremum(s - FourierSymbol.constant(w), False, target, threshold)
