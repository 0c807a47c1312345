import cmath
import math

import numpy as np
import pytest

from ltoeplitz import spectra, symbolkit, wco
from ltoeplitz.constants import Kinds
from ltoeplitz.errors import NotAnalytic, NotElliptic, NotFiniteOrder, TailTooLarge
from ltoeplitz.structs.curve import equispaced
from ltoeplitz.structs.moebius import MoebiusAutomorphism
from ltoeplitz.structs.symbol import FourierSymbol, RationalRotation

from conftest import CBRT2

Z0 = 0.3 + 0.1j
LAM = cmath.exp(2j * math.pi / 3)


def circle_points(count: int = 32) -> np.ndarray:
    return 0.9 * np.exp(1j * equispaced(count))


def assert_same_map(m1: MoebiusAutomorphism, m2: MoebiusAutomorphism, atol: float = 1e-10) -> None:
    z = circle_points()
    np.testing.assert_allclose(wco.moebius_eval(m1, z), wco.moebius_eval(m2, z), atol=atol)


@pytest.fixture
def conjugated_rotation() -> MoebiusAutomorphism:
    """Order-3 elliptic automorphism fixing Z0."""
    return wco.conjugate_by(wco.rotation(LAM), wco.conjugator(Z0))


class TestMoebius:
    def test_canonical_forms(self):
        z = circle_points()
        np.testing.assert_allclose(wco.moebius_eval(wco.identity(), z), z, atol=1e-15)
        np.testing.assert_allclose(wco.moebius_eval(MoebiusAutomorphism(0.0, 0j), z), -z)

    def test_vanishes_at_w(self):
        m = MoebiusAutomorphism(1.3, 0.4 - 0.2j)
        assert abs(wco.moebius_eval(m, m.w)) < 1e-15

    def test_rotation(self):
        np.testing.assert_allclose(wco.moebius_eval(wco.rotation(LAM), circle_points()), LAM * circle_points())

    def test_preserves_the_circle(self):
        circle = np.exp(1j * equispaced(64))
        for m in (MoebiusAutomorphism(0.7, 0.2 + 0.5j), MoebiusAutomorphism(4.0, -0.6j), wco.conjugator(Z0)):
            np.testing.assert_allclose(np.abs(wco.moebius_eval(m, circle)), 1, atol=1e-12)

    def test_group_laws(self):
        m1 = MoebiusAutomorphism(0.7, 0.2 + 0.5j)
        m2 = MoebiusAutomorphism(4.0, -0.6j)
        assert_same_map(wco.compose(m1, wco.identity()), m1)
        assert_same_map(wco.compose(wco.identity(), m1), m1)
        assert_same_map(wco.compose(m1, wco.inverse(m1)), wco.identity())
        assert_same_map(wco.inverse(wco.compose(m1, m2)), wco.compose(wco.inverse(m2), wco.inverse(m1)))

    def test_compose_evaluates_in_order(self):
        m1 = MoebiusAutomorphism(0.7, 0.2 + 0.5j)
        m2 = MoebiusAutomorphism(4.0, -0.6j)
        z = circle_points()
        np.testing.assert_allclose(
            wco.moebius_eval(wco.compose(m1, m2), z), wco.moebius_eval(m1, wco.moebius_eval(m2, z)), atol=1e-12
        )

    def test_involution(self):
        negation = MoebiusAutomorphism(0.0, 0j)
        assert_same_map(wco.inverse(negation), negation)
        zeta = wco.conjugator(Z0)
        assert abs(wco.moebius_eval(zeta, 0) - Z0) < 1e-15
        z = circle_points()
        np.testing.assert_allclose(wco.moebius_eval(zeta, wco.moebius_eval(zeta, z)), z, atol=1e-12)

    def test_conjugator_at_origin_is_negation(self):
        assert_same_map(wco.conjugator(0), MoebiusAutomorphism(0.0, 0j))


class TestFixedPoint:
    def test_recovers_conjugated_rotation(self, conjugated_rotation):
        assert abs(wco.fixed_point(conjugated_rotation) - Z0) < 1e-9
        lam, q = wco.multiplier_and_order(conjugated_rotation)
        assert abs(lam - LAM) < 1e-9
        assert q == 3

    def test_centred(self):
        assert wco.fixed_point(MoebiusAutomorphism(0.0, 0j)) == 0
        lam, q = wco.multiplier_and_order(MoebiusAutomorphism(0.0, 0j))
        assert lam == pytest.approx(-1)
        assert q == 2

    def test_identity_has_order_one(self):
        lam, q = wco.multiplier_and_order(wco.identity())
        assert lam == pytest.approx(1)
        assert q == 1

    def test_boundary_fixed_points(self):
        # (z + 1/2) / (1 + z/2) fixes +1 and -1
        hyperbolic = MoebiusAutomorphism(math.pi, -0.5 + 0j)
        np.testing.assert_allclose(wco.moebius_eval(hyperbolic, np.array([1, -1])), [1, -1], atol=1e-15)
        with pytest.raises(NotElliptic):
            wco.fixed_point(hyperbolic)

    def test_infinite_order(self):
        with pytest.raises(NotFiniteOrder):
            wco.multiplier_and_order(wco.rotation(cmath.exp(1j)))

    def test_order_cap(self, conjugated_rotation):
        with pytest.raises(NotFiniteOrder):
            wco.multiplier_and_order(conjugated_rotation, max_order=2)


class TestPullback:
    def test_identity_conjugator(self, phi):
        assert wco.pullback_symbol(phi, wco.identity(), 8).isclose(phi, atol=1e-12)

    def test_taylor_coefficients(self):
        pulled = wco.pullback_symbol(FourierSymbol.monomial(1), wco.conjugator(Z0), 64)
        assert pulled.coefficient(0) == pytest.approx(Z0, abs=1e-12)
        assert pulled.coefficient(1) == pytest.approx(abs(Z0) ** 2 - 1, abs=1e-12)
        assert pulled.coefficient(2) == pytest.approx(Z0.conjugate() * (abs(Z0) ** 2 - 1), abs=1e-12)

    def test_tail_too_large(self):
        with pytest.raises(TailTooLarge) as error:
            wco.pullback_symbol(FourierSymbol.monomial(1), wco.conjugator(0.9), 4)
        assert error.value.degree == 4

    def test_adaptive_degree(self):
        pulled = wco.adaptive_pullback(FourierSymbol.monomial(1), wco.conjugator(0.9))
        assert pulled.degree > 64

    def test_requires_analytic(self):
        with pytest.raises(NotAnalytic):
            wco.pullback_symbol(FourierSymbol.from_dict({-1: 1}), wco.identity(), 8)


class TestReduce:
    def test_negation_matches_direct_path(self, phi, rng):
        negation = MoebiusAutomorphism(0.0, 0j)
        reduction = wco.reduce(phi, negation)
        assert reduction.rotation == RationalRotation(1, 2)
        direct = symbolkit.product_symbol(symbolkit.twist(phi, reduction.rotation), reduction.rotation, 2)
        assert reduction.product.isclose(direct, atol=1e-10)

        for mu in rng.uniform(-2, 2, size=10) + 1j * rng.uniform(-2, 2, size=10):
            via_wco = wco.wco_classify(phi, negation, mu)
            via_direct = spectra.classify(direct, reduction.rotation, mu)
            assert via_wco.kind == via_direct.kind
            assert via_wco.index == via_direct.index

    def test_round_trip(self, conjugated_rotation):
        reduction = wco.reduce(FourierSymbol.monomial(1), conjugated_rotation)
        assert abs(reduction.fixed_point - Z0) < 1e-9
        assert abs(reduction.multiplier - LAM) < 1e-9
        assert reduction.rotation == RationalRotation(1, 3)
        assert_same_map(
            wco.conjugate_by(conjugated_rotation, reduction.zeta), wco.rotation(reduction.rotation.lam), atol=1e-10
        )

    @pytest.mark.parametrize("mu", [0, 0.1j, -1.5, 2, 1.2 + 1.2j])
    def test_conjugator_choice_is_irrelevant(self, conjugated_rotation, mu):
        phi = FourierSymbol.monomial(1)
        standard = wco.wco_classify(phi, conjugated_rotation, mu)
        turned = wco.compose(wco.conjugator(Z0), wco.rotation(cmath.exp(0.8j)))
        rotated = wco.wco_classify(phi, conjugated_rotation, mu, zeta=turned)
        assert rotated.kind == standard.kind
        assert rotated.index == standard.index

    def test_fixed_point_is_a_hole(self, conjugated_rotation):
        result = wco.wco_classify(FourierSymbol.monomial(1), conjugated_rotation, 0)
        assert result.index == -1

    def test_conjugator_must_hit_fixed_point(self, conjugated_rotation):
        with pytest.raises(ValueError):
            wco.reduce(FourierSymbol.monomial(1), conjugated_rotation, zeta=wco.conjugator(0.5))

    def test_identity_automorphism(self, phi):
        reduction = wco.reduce(phi, wco.identity())
        assert reduction.rotation == RationalRotation.identity()
        # the conjugator at 0 is z -> -z
        assert reduction.product.isclose(FourierSymbol.from_dict({1: -1, 0: -CBRT2}), atol=1e-10)
        for mu in (-CBRT2, 0, CBRT2, 1 - CBRT2 + 0.5j):
            via_wco = wco.wco_classify(phi, wco.identity(), mu)
            via_direct = spectra.classify(phi, RationalRotation.identity(), mu)
            assert via_wco.kind == via_direct.kind
            assert via_wco.index == via_direct.index
        assert wco.wco_classify(phi, wco.identity(), -CBRT2).index == -1

    def test_constant_weight(self, conjugated_rotation):
        phi = FourierSymbol.constant(0.5)
        assert wco.reduce(phi, conjugated_rotation).product.isclose(FourierSymbol.constant(0.125), atol=1e-12)
        assert wco.wco_classify(phi, conjugated_rotation, 0.5 * LAM).kind == Kinds.ESSENTIAL
        assert wco.wco_classify(phi, conjugated_rotation, 0.6).kind == Kinds.RESOLVENT
