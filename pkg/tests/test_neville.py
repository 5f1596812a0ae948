import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nevell.checks import normalization_limit
from nevell.lattice import LatticeSpec, coordinates, invariants, reduce_basis
from nevell.neville import (
    period_character,
    preferred_primitive,
    primitive_J,
    primitive_J_array,
    sigma_p,
    sigma_p_array,
)
from nevell.weierstrass import (
    EvalValue,
    midpoint_constants,
    random_regular_points,
    sigma_array,
    wp_array,
    wp_prime_array,
)

from conftest import GENERIC, random_lattice

LATTICES = [LatticeSpec(1, 1j), GENERIC, LatticeSpec(0.3 - 2j, 1 + 0.2j), LatticeSpec(2 + 1j, 1 + 1j)]


@pytest.mark.parametrize("l", LATTICES)
@pytest.mark.parametrize("p", [1, 2, 3])
def test_square_is_wp_minus_e(l, p, rng):
    zs = random_regular_points(l, 40, rng)
    J, _ = primitive_J_array(l, p, zs)
    w, _ = wp_array(l, zs)
    rhs = w - midpoint_constants(l).e[p - 1]
    assert np.all(np.abs(J * J - rhs) <= 1e-9 * np.abs(rhs))


@pytest.mark.parametrize("l", LATTICES)
@pytest.mark.parametrize("p", [1, 2, 3])
def test_cosigma_quotient(l, p, rng):
    zs = random_regular_points(l, 20, rng, min_distance=0.1)
    J, _ = primitive_J_array(l, p, zs)
    q = sigma_p_array(l, p, zs) / sigma_array(l, zs)
    assert np.all(np.abs(q - J) <= 1e-9 * np.abs(J))


@pytest.mark.parametrize("l", LATTICES[:3])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_normalization(l, p):
    assert abs(normalization_limit(l, p) - 1) < 1e-8
    assert abs(sigma_p(l, p, 0) - 1) < 1e-12


@pytest.mark.parametrize("p", [1, 2, 3])
def test_odd(generic, rng, p):
    zs = random_regular_points(generic, 20, rng)
    a, _ = primitive_J_array(generic, p, -zs)
    b, _ = primitive_J_array(generic, p, zs)
    assert np.all(np.abs(a + b) <= 1e-12 * np.abs(b))


def test_cosigma_even(generic):
    for p in (1, 2, 3):
        z = 0.27 - 0.41j
        assert sigma_p(generic, p, -z) == pytest.approx(sigma_p(generic, p, z), rel=1e-11)


@pytest.mark.parametrize("l", LATTICES)
def test_product_is_derivative(l, rng):
    # wp' = -2 J1 J2 J3
    zs = random_regular_points(l, 30, rng)
    prod = np.prod([primitive_J_array(l, p, zs)[0] for p in (1, 2, 3)], axis=0)
    d, _ = wp_prime_array(l, zs)
    assert np.all(np.abs(-2 * prod - d) <= 1e-9 * np.abs(d))


class TestPolesAndZeros:
    def test_simple_pole_on_lattice(self, generic):
        for p in (1, 2, 3):
            assert primitive_J(generic, p, 0) == EvalValue.pole(1)
            assert primitive_J(generic, p, 2 * generic.w1 - 2 * generic.w2) == EvalValue.pole(1)

    @pytest.mark.parametrize("l", LATTICES)
    def test_zero_at_own_midpoint(self, l):
        mid = midpoint_constants(l)
        for p in (1, 2, 3):
            for q in (1, 2, 3):
                v = primitive_J(l, p, mid.w[q - 1]).value
                if q == p:
                    assert abs(v) * invariants(l).scale < 1e-10
                else:
                    assert abs(v) > 1e-3

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_scan_finds_only_own_midpoint(self, generic, p):
        # minimum modulus over a 64 x 64 scan lies next to the midpoint class of w_p
        rb = reduce_basis(generic)
        t = (np.arange(64) + 0.5) / 64
        a, b = np.meshgrid(t, t)
        zs = (2 * a * rb.w1r + 2 * b * rb.w2r).ravel()
        J, _ = primitive_J_array(generic, p, zs)
        zmin = zs[np.nanargmin(np.abs(J))]
        x, y = coordinates(rb.w1r, rb.w2r, zmin - midpoint_constants(generic).w[p - 1])
        # integer coordinates mean zmin is congruent to w_p
        assert abs(x - round(x)) < 1 / 32 and abs(y - round(y)) < 1 / 32


class TestGaussianSymmetry:
    def test_rotation_identities(self, gaussian, rng):
        zs = random_regular_points(gaussian, 100, rng)

        def J(p, z):
            return primitive_J_array(gaussian, p, z)[0]

        assert np.all(np.abs(1j * J(3, 1j * zs) - J(3, zs)) <= 1e-9 * np.abs(J(3, zs)))
        assert np.all(np.abs(1j * J(1, 1j * zs) - J(2, zs)) <= 1e-9 * np.abs(J(2, zs)))
        assert np.all(np.abs(1j * J(2, 1j * zs) - J(1, zs)) <= 1e-9 * np.abs(J(1, zs)))

    def test_j3_is_sqrt_wp(self, gaussian, rng):
        zs = random_regular_points(gaussian, 100, rng)
        J3, _ = primitive_J_array(gaussian, 3, zs)
        w, _ = wp_array(gaussian, zs)
        assert np.all(np.abs(J3 * J3 - w) <= 1e-9 * np.abs(w))


class TestPeriodCharacter:
    @pytest.mark.parametrize("l", LATTICES)
    def test_signs(self, l):
        # J_p(z + 2 w_q) = -J_p(z) exactly when q != p
        for p in (1, 2, 3):
            for q in (1, 2):
                s = period_character(l, p, q)
                assert s in (1, -1)
                assert s == (1 if p == q else -1)

    def test_known_table(self, generic):
        table = [[period_character(generic, p, q) for q in (1, 2)] for p in (1, 2, 3)]
        assert table == [[1, -1], [-1, 1], [-1, -1]]

    def test_bad_index(self, generic):
        with pytest.raises(ValueError):
            period_character(generic, 1, 3)
        with pytest.raises(ValueError):
            primitive_J(generic, 4, 0.3)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_character_squares_to_one(self, seed):
        l = random_lattice(np.random.default_rng(seed))
        for p in (1, 2, 3):
            for q in (1, 2):
                assert period_character(l, p, q) ** 2 == 1


class TestPreferredPrimitive:
    def test_gaussian(self, gaussian):
        assert preferred_primitive(gaussian) == 3

    def test_scaled_gaussian(self, gaussian):
        assert preferred_primitive(gaussian.scaled(2.7)) == 3

    def test_other_basis(self):
        # w2 = 1+i is congruent to w3 of the standard basis, so e2 = 0 here
        assert preferred_primitive(LatticeSpec(2 + 1j, 1 + 1j)) == 2

    def test_generic_none(self, generic, hexagonal):
        assert preferred_primitive(generic) is None
        assert preferred_primitive(hexagonal) is None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_square_identity(seed):
    rng = np.random.default_rng(seed)
    l = random_lattice(rng)
    zs = random_regular_points(l, 20, rng)
    w, _ = wp_array(l, zs)
    for p in (1, 2, 3):
        J, _ = primitive_J_array(l, p, zs)
        rhs = w - midpoint_constants(l).e[p - 1]
        assert np.all(np.abs(J * J - rhs) <= 1e-9 * np.abs(rhs))
