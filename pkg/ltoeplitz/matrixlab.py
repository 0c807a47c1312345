"""
Finite sections of lambda-Toeplitz, Toeplitz, diagonal-unitary and shift
operators on H^2, with the singular-value kernels used as numerical oracle
"""

import logging

import msgspec
import numpy as np
import scipy.linalg

from ltoeplitz import symbolkit
from ltoeplitz.constants import Limits
from ltoeplitz.errors import DimensionTooLarge, NotAnalytic
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

logger = logging.getLogger(__name__)


def check_dimension(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    if n > Limits.MAX_DIMENSION:
        raise DimensionTooLarge(f"dimension {n} exceeds the cap of {Limits.MAX_DIMENSION}")


class DenseOperator(msgspec.Struct, frozen=True, eq=False):
    """n x n compression onto span{e_0..e_{n-1}}; entries[row, col] = <T e_col, e_row>."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"operator must be square, got shape {self.entries.shape}")
        check_dimension(self.entries.shape[0])
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("operator entries must be finite")
        self.entries.setflags(write=False)

    @classmethod
    def identity(cls, n: int) -> "DenseOperator":
        return cls(np.eye(n, dtype=np.complex128))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def entry(self, row: int, col: int) -> complex:
        return complex(self.entries[row, col])

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.entries.conj().T.copy())

    def power(self, k: int) -> "DenseOperator":
        return DenseOperator(np.linalg.matrix_power(self.entries, k))

    def shifted(self, mu: complex) -> "DenseOperator":
        """A - mu I."""
        return DenseOperator(self.entries - mu * np.eye(self.n))

    def max_abs_diff(self, other: "DenseOperator") -> float:
        return float(np.max(np.abs(self.entries - other.entries)))

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.entries @ other.entries)


def _multiplier_powers(r: RationalRotation | complex, n: int) -> np.ndarray:
    if isinstance(r, RationalRotation):
        return r.powers(n)

    lam = complex(r)
    if abs(lam) > 1:
        raise ValueError(f"|lambda| must be at most 1, got {abs(lam)}")
    powers = np.full(n, lam, dtype=np.complex128)
    powers[0] = 1
    return np.cumprod(powers)


def _toeplitz_entries(s: FourierSymbol, n: int) -> np.ndarray:
    width = max(s.degree, n - 1)
    table = s.padded(width)
    offsets = np.arange(n)
    return scipy.linalg.toeplitz(table[width + offsets], table[width - offsets])


def build_toeplitz(s: FourierSymbol, n: int) -> DenseOperator:
    """entry(i, j) = a_{i-j}."""
    check_dimension(n)
    return DenseOperator(_toeplitz_entries(s, n))


def build_lambda_toeplitz(s: FourierSymbol, r: RationalRotation | complex, n: int) -> DenseOperator:
    """
    entry(i, j) = lambda^{min(i, j)} a_{i-j}.

    ``r`` may also be a bare complex multiplier with |lambda| <= 1, which
    covers the compact (|lambda| < 1) and finite-rank (lambda = 0) cases.
    """
    check_dimension(n)
    powers = _multiplier_powers(r, n)
    offsets = np.arange(n)
    return DenseOperator(_toeplitz_entries(s, n) * powers[np.minimum.outer(offsets, offsets)])


def build_rotation_unitary(r: RationalRotation | complex, n: int) -> DenseOperator:
    """U_lambda e_k = lambda^k e_k."""
    check_dimension(n)
    return DenseOperator(np.diag(_multiplier_powers(r, n)))


def build_shift(n: int) -> DenseOperator:
    """S e_k = e_{k+1}."""
    check_dimension(n)
    return DenseOperator(np.eye(n, k=-1, dtype=np.complex128))


def shift_action(A: DenseOperator) -> DenseOperator:
    """Compression of S* A S; its leading (n-1) block is A shifted one step down the diagonal."""
    shift = build_shift(A.n)
    return shift.adjoint() @ A @ shift


def build_power_product(s: FourierSymbol, r: RationalRotation, k: int, n: int) -> DenseOperator:
    """U^k T_{psi o tau_bar^{k-1}} ... T_psi with psi the twisted symbol."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    psi = symbolkit.twist(s, r)
    result = build_rotation_unitary(r, n).power(k)
    for j in reversed(range(k)):
        result = result @ build_toeplitz(symbolkit.rotate(psi, r, j), n)
    return result


def op_norm(A: DenseOperator) -> float:
    """Largest singular value."""
    return float(scipy.linalg.svdvals(A.entries)[0])


def singular_values(A: DenseOperator) -> np.ndarray:
    """All singular values, descending."""
    return scipy.linalg.svdvals(A.entries)


def smallest_singular(A: DenseOperator, mu: complex = 0) -> float:
    """sigma_min(A - mu I)."""
    return float(scipy.linalg.svdvals(A.shifted(mu).entries)[-1])


def factorization_error(s: FourierSymbol, r: RationalRotation, n: int) -> float:
    """max |T_{lambda,phi} - U_lambda T_{phi_{lambda_bar,+}}| on the n-section."""
    direct = build_lambda_toeplitz(s, r, n)
    factored = build_rotation_unitary(r, n) @ build_toeplitz(symbolkit.twist(s, r), n)
    return direct.max_abs_diff(factored)


def power_identity_error(s: FourierSymbol, r: RationalRotation, n: int) -> float:
    """max |(T_n)^q - (T_{prod})_n|, exact for analytic symbols since every factor is lower triangular."""
    if not symbolkit.is_analytic(s):
        raise NotAnalytic("the power identity is an equality only for analytic symbols")
    prod = symbolkit.product_symbol(symbolkit.twist(s, r), r, r.q)
    power = build_lambda_toeplitz(s, r, n).power(r.q)
    return power.max_abs_diff(build_toeplitz(prod, n))


def shift_relation_error(s: FourierSymbol, r: RationalRotation | complex, n: int) -> float:
    """max |S*TS - lambda T| over the leading (n-1) block."""
    T = build_lambda_toeplitz(s, r, n)
    lam = r.lam if isinstance(r, RationalRotation) else complex(r)
    if n == 1:
        return 0.0
    block = shift_action(T).entries[:-1, :-1]
    return float(np.max(np.abs(block - lam * T.entries[:-1, :-1])))
