import numpy as np
import pytest

from ltoeplitz import symbolkit
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

CBRT2 = 2 ** (1 / 3)


@pytest.fixture
def rotation() -> RationalRotation:
    """lambda = exp(2 pi i / 3)."""
    return RationalRotation(1, 3)


@pytest.fixture
def phi() -> FourierSymbol:
    """e^{i theta} - 2^{1/3}."""
    return FourierSymbol.from_dict({1: 1, 0: -CBRT2})


@pytest.fixture
def twisted(phi, rotation) -> FourierSymbol:
    return symbolkit.twist(phi, rotation)


@pytest.fixture
def product(twisted, rotation) -> FourierSymbol:
    """e^{3 i theta} - 2."""
    return symbolkit.product_symbol(twisted, rotation, rotation.q)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_analytic(rng):
    """Factory for analytic symbols with Gaussian Taylor coefficients."""

    def build(degree: int) -> FourierSymbol:
        values = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        return FourierSymbol.from_array(values)

    return build
