import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistedzeta import (
    FreeGroupEndo,
    GroupRingElement,
    IntMatrix,
    fox_derivative,
    free_reduce,
    jacobian,
    matrix_norm,
    matrix_of_norms,
    nielsen_radius_bounds,
    parse_word,
    ring_norm,
    spectral_radius,
    twisted_power_norm,
    word_to_str,
)
from twistedzeta.fox import chain_matrices, word_inverse


def random_word(rng, rank, max_len):
    letters = []
    for _ in range(rng.randint(0, max_len)):
        j = rng.randint(1, rank)
        letters.append(j if rng.random() < 0.5 else -j)
    return free_reduce(letters)


words = st.integers(1, 4).flatmap(
    lambda rank: st.lists(
        st.integers(1, rank).flatmap(
            lambda j: st.sampled_from([j, -j])),
        max_size=25).map(free_reduce))


class TestWords:
    def test_parse_round_trip(self):
        w = parse_word("abA")
        assert w == (1, 2, -1)
        assert word_to_str(w) == "abA"

    def test_parse_reduces(self):
        assert parse_word("aA") == ()
        assert parse_word("abBA") == ()

    def test_free_reduce_nested(self):
        assert free_reduce([1, 2, -2, -1, 3]) == (3,)

    @given(words)
    @settings(max_examples=100, deadline=None)
    def test_inverse_cancels(self, w):
        assert free_reduce(w + word_inverse(w)) == ()


class TestGroupRing:
    def test_ring_axioms_spot(self):
        a = GroupRingElement.from_word((1,))
        b = GroupRingElement.from_word((2,))
        one = GroupRingElement.one()
        assert a * one == a
        assert (a + b) * a == a * a + b * a
        assert a - a == GroupRingElement.zero()

    def test_multiplication_reduces_words(self):
        a = GroupRingElement.from_word((1,))
        ainv = GroupRingElement.from_word((-1,))
        assert a * ainv == GroupRingElement.one()

    def test_ring_norm_is_coefficient_sum(self):
        x = GroupRingElement({(1,): 2, (2, 1): -3})
        assert ring_norm(x) == 5

    @given(words, words)
    @settings(max_examples=60, deadline=None)
    def test_norm_submultiplicative(self, u, v):
        x = GroupRingElement.from_word(u) + GroupRingElement.one()
        y = GroupRingElement.from_word(v) - GroupRingElement.from_word(u)
        assert ring_norm(x * y) <= ring_norm(x) * ring_norm(y)


class TestFoxDerivative:
    def test_generator_rules(self):
        assert fox_derivative((1,), 1) == GroupRingElement.one()
        assert fox_derivative((1,), 2) == GroupRingElement.zero()
        assert fox_derivative((-1,), 1) == -GroupRingElement.from_word((-1,))

    def test_conjugate_example(self):
        # d(aba^-1)/da = 1 - aba^-1
        w = parse_word("abA")
        got = fox_derivative(w, 1)
        want = (GroupRingElement.one()
                - GroupRingElement.from_word((1, 2, -1)))
        assert got == want

    @given(words, words)
    @settings(max_examples=100, deadline=None)
    def test_product_rule(self, u, v):
        # d(uv) = du + u dv (computed on the reduced product)
        uv = free_reduce(u + v)
        for j in (1, 2, 3, 4):
            lhs = fox_derivative(uv, j)
            rhs = (fox_derivative(u, j)
                   + GroupRingElement.from_word(u) * fox_derivative(v, j))
            assert lhs == rhs

    @given(words)
    @settings(max_examples=100, deadline=None)
    def test_fundamental_identity(self, w):
        # sum_j (dw/da_j)(a_j - 1) = w - 1
        total = GroupRingElement.zero()
        for j in (1, 2, 3, 4):
            aj = GroupRingElement.from_word((j,))
            total = total + fox_derivative(w, j) * (aj - GroupRingElement.one())
        want = GroupRingElement.from_word(w) - GroupRingElement.one()
        assert total == want


class TestJacobian:
    def test_known_substitution(self):
        # a -> ab, b -> a has Jacobian [[1, a], [1, 0]]
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        D = jacobian(phi)
        assert D.entries[0][0] == GroupRingElement.one()
        assert D.entries[0][1] == GroupRingElement.from_word((1,))
        assert D.entries[1][0] == GroupRingElement.one()
        assert not D.entries[1][1]

    def test_norm_matrix(self):
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        N = matrix_of_norms(jacobian(phi))
        assert N == IntMatrix([[1, 1], [1, 0]])


class TestSpectralRadius:
    def test_fibonacci_matrix(self):
        sr = spectral_radius(IntMatrix([[1, 1], [1, 0]]))
        golden = (1 + math.sqrt(5)) / 2
        assert sr.value == pytest.approx(golden, rel=1e-10)
        assert sr.low <= golden <= sr.high

    def test_permutation_matrix(self):
        sr = spectral_radius(IntMatrix([[0, 1], [1, 0]]))
        assert sr.value == pytest.approx(1.0, rel=1e-10)

    def test_reducible_matrix(self):
        # two blocks: radius is the max over strongly connected pieces
        A = IntMatrix([[2, 1, 0], [0, 3, 0], [0, 0, 5]])
        sr = spectral_radius(A)
        assert sr.value == pytest.approx(5.0, rel=1e-10)

    def test_zero_matrix(self):
        assert spectral_radius(IntMatrix([[0]])).value == 0.0

    def test_agrees_with_numpy(self):
        import numpy as np
        rng = random.Random(9)
        for _ in range(40):
            k = rng.randint(1, 5)
            A = IntMatrix([[rng.randint(0, 4) for _ in range(k)]
                           for _ in range(k)])
            sr = spectral_radius(A)
            want = max(abs(mu) for mu in
                       np.linalg.eigvals(np.array(A.entries, dtype=float)))
            assert sr.value == pytest.approx(want, abs=1e-8)


class TestRadiusBounds:
    def test_reference_substitution(self):
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        bounds = nielsen_radius_bounds(phi)
        assert bounds.bound_norm == Fraction(1, 3)
        golden = (1 + math.sqrt(5)) / 2
        assert bounds.bound_spectral == pytest.approx(1 / golden, rel=1e-10)
        assert bounds.bound_spectral >= float(bounds.bound_norm)

    def test_identity_substitution(self):
        phi = FreeGroupEndo.identity(2)
        bounds = nielsen_radius_bounds(phi)
        # Jacobian is the 2x2 identity over the group ring: total norm 2,
        # spectral radius 1
        assert bounds.bound_norm == Fraction(1, 2)
        assert bounds.bound_spectral == pytest.approx(1.0)

    def test_spectral_never_below_norm_bound(self):
        rng = random.Random(13)
        for _ in range(25):
            rank = rng.randint(1, 3)
            images = []
            for _ in range(rank):
                images.append(random_word(rng, rank, 6))
            phi = FreeGroupEndo(rank, tuple(images))
            bounds = nielsen_radius_bounds(phi)
            assert bounds.bound_spectral >= float(bounds.bound_norm) - 1e-12


class TestTwistedPowers:
    def test_reference_value(self):
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        D = jacobian(phi)
        assert twisted_power_norm(phi, D, 1) == matrix_norm(D)
        assert twisted_power_norm(phi, D, 2) == 5

    def test_growth_rate_matches_spectral_bound(self):
        # ||(zD)^n||^(1/n) approaches the reciprocal of the spectral bound
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        D = jacobian(phi)
        bounds = nielsen_radius_bounds(phi)
        rate = twisted_power_norm(phi, D, 12) ** (1 / 12)
        assert rate == pytest.approx(1 / bounds.bound_spectral, rel=0.15)

    def test_chain_matrices_shapes(self):
        phi = FreeGroupEndo.from_strings(2, ["ab", "a"])
        chains = chain_matrices(phi)
        assert len(chains) == 2
        assert chains[0].entries[0][0] == GroupRingElement.one()
        assert len(chains[1].entries) == 2
