import json

import numpy as np
import pytest

from nevell.errors import WitnessVerificationFailed
from nevell.lattice import ClassTag, LatticeSpec, classify, coordinates, invariants, reduce_basis
from nevell.obstruction import (
    ObstructionReport,
    Target,
    ZeroReport,
    wp_sqrt_obstruction,
    wp_zeros,
    zeta4_sqrt_obstruction,
)
from nevell.weierstrass import midpoint_constants, wp, wp_double_prime, wp_prime

from conftest import random_lattice

# found once by the zero search and checked against the oracle (|wp| < 1e-10 there)
GENERIC_ZEROS = (0.953675725769549 + 0.7065887030164635j, 1.646324274230451 + 1.4934112969835371j)


def _congruent(l, a, b, tol=1e-7):
    rb = reduce_basis(l)
    x, y = coordinates(rb.w1r, rb.w2r, a - b)
    return abs(x - round(x)) < tol and abs(y - round(y)) < tol


class TestReports:
    def test_gaussian(self, gaussian):
        r = wp_sqrt_obstruction(gaussian)
        assert r.exists and r.witness == "J3" and r.target is Target.WP
        assert r.residual < 1e-10
        assert not zeta4_sqrt_obstruction(gaussian).exists

    def test_hexagonal(self, hexagonal):
        r = zeta4_sqrt_obstruction(hexagonal)
        assert r.exists and r.witness == "±℘" and r.target is Target.ZETA4
        assert not wp_sqrt_obstruction(hexagonal).exists

    def test_generic(self, generic):
        a, b = wp_sqrt_obstruction(generic), zeta4_sqrt_obstruction(generic)
        assert not a.exists and not b.exists
        assert a.witness is None and b.witness is None
        assert a.residual == pytest.approx(abs(invariants(generic).g3n))
        assert b.residual == pytest.approx(abs(invariants(generic).g2n))

    def test_exclusive_on_random_lattices(self, rng):
        for _ in range(20):
            l = random_lattice(rng)
            a, b = wp_sqrt_obstruction(l), zeta4_sqrt_obstruction(l)
            assert not (a.exists and b.exists)

    def test_special_lattices_rotated(self):
        for c in (0.4, 3 * np.exp(1.1j)):
            assert wp_sqrt_obstruction(LatticeSpec(c, 1j * c)).exists
            h = LatticeSpec(c, c * np.exp(1j * np.pi / 3))
            assert zeta4_sqrt_obstruction(h).exists

    def test_threshold_controls_verdict(self, generic):
        # with a huge threshold the generic lattice classifies as G2_ZERO, but wp^2 != zeta4
        with pytest.raises(WitnessVerificationFailed):
            zeta4_sqrt_obstruction(generic, threshold=200.0)

    def test_round_trip(self, gaussian, hexagonal):
        for r in (wp_sqrt_obstruction(gaussian), zeta4_sqrt_obstruction(hexagonal),
                  wp_sqrt_obstruction(hexagonal)):
            assert ObstructionReport.from_dict(json.loads(json.dumps(r.to_dict()))) == r


class TestZeros:
    def test_gaussian_double_zero(self, gaussian):
        rep = wp_zeros(gaussian)
        assert rep.orders == (2,) and rep.total_order == 2
        assert _congruent(gaussian, rep.locations[0], gaussian.w1 + gaussian.w2)

    def test_generic_simple_zeros(self, generic):
        rep = wp_zeros(generic)
        assert rep.orders == (1, 1) and rep.total_order == 2
        for z, ref in zip(rep.locations, GENERIC_ZEROS):
            assert abs(z - ref) < 1e-9
        # the two zeros are negatives of each other mod the lattice
        assert _congruent(generic, rep.locations[0], -rep.locations[1])

    def test_hexagonal(self, hexagonal):
        rep = wp_zeros(hexagonal)
        assert rep.orders == (1, 1)
        for z in rep.locations:
            assert abs(wp(hexagonal, z).value) < 1e-10

    @pytest.mark.parametrize("c", [2.7, 0.01 + 0.3j, np.exp(2j)])
    def test_scaled_gaussian(self, gaussian, c):
        rep = wp_zeros(gaussian.scaled(c))
        assert rep.orders == (2,)

    def test_nearly_gaussian_splits(self):
        rep = wp_zeros(LatticeSpec(1, 1j + 1e-4))
        assert rep.orders == (1, 1)
        assert abs(rep.locations[0] - rep.locations[1]) < 0.1

    def test_random_lattices(self, rng):
        for _ in range(5):
            l = random_lattice(rng)
            rep = wp_zeros(l)
            assert rep.total_order == 2
            s = invariants(l).scale
            for z in rep.locations:
                assert abs(wp(l, z).value) * s**2 < 1e-10
            if rep.orders == (1, 1):
                assert _congruent(l, rep.locations[0], -rep.locations[1])

    def test_round_trip(self, generic):
        rep = wp_zeros(generic)
        assert ZeroReport.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep


class TestConsistency:
    def test_zero_orders_match_classification(self, rng):
        lattices = [LatticeSpec(1, 1j), LatticeSpec(1, np.exp(1j * np.pi / 3))]
        lattices += [random_lattice(rng) for _ in range(4)]
        for l in lattices:
            double = wp_zeros(l).orders == (2,)
            assert double == wp_sqrt_obstruction(l).exists
            assert double == (classify(invariants(l)).tag is ClassTag.G3_ZERO)

    def test_second_derivative_at_double_zero(self, gaussian):
        # wp'' = 6 wp^2 - g2/2, so at a zero of wp it equals -g2/2
        g2 = invariants(gaussian).g2
        mid = midpoint_constants(gaussian)
        v = wp_double_prime(gaussian, mid.w[2]).value
        assert v == pytest.approx(-g2 / 2, rel=1e-10)
        assert abs(wp_prime(gaussian, mid.w[2]).value) < 1e-10
