import pytest

from twistedzeta import (
    all_endomorphisms,
    endo_from_generator_images,
    eventual_image,
    group_from_permutations,
    identity_endo,
    iterate_endo,
    ordinary_conjugacy_classes,
    phi_conjugacy_classes,
    trivial_group,
)
from twistedzeta.errors import (
    ClosureTooLarge,
    DoesNotGenerate,
    NotAHomomorphism,
    NotAPermutation,
)

from catalog import (
    cyclic6_doubling,
    finite_catalog,
    klein_four,
    klein_swap,
    sym3,
)


class TestGroupFromPermutations:
    def test_sym3_has_order_6(self):
        G = group_from_permutations(3, [(1, 2, 0), (1, 0, 2)])
        assert G.order == 6

    def test_trivial_closure(self):
        G = group_from_permutations(1, [])
        assert G.order == 1

    def test_klein_four_closure(self):
        G, _ = klein_four()
        assert G.order == 4
        assert all(G.inv[g] == g for g in G.elements())

    def test_rejects_non_permutation(self):
        with pytest.raises(NotAPermutation):
            group_from_permutations(3, [(0, 0, 1)])

    def test_cap(self):
        with pytest.raises(ClosureTooLarge):
            group_from_permutations(4, [(1, 2, 3, 0), (1, 0, 2, 3)], cap=10)

    def test_axioms_hold_for_whole_catalog(self):
        for name, G, _ in finite_catalog():
            G.check_axioms()


class TestEndoFromGeneratorImages:
    def test_identity_on_sym3(self):
        G, gens = sym3()
        phi = endo_from_generator_images(G, gens, gens)
        assert phi.image == identity_endo(G).image

    def test_klein_swap_has_order_two(self):
        K, swap = klein_swap()
        assert iterate_endo(swap, 2).image == identity_endo(K).image
        assert swap.image != identity_endo(K).image

    def test_cyclic6_doubling(self):
        C6, phi = cyclic6_doubling()
        assert phi.image == (0, 2, 4, 0, 2, 4)
        assert len(set(phi.image)) == 3

    def test_rejects_non_homomorphism(self):
        G, gens = sym3()
        # send the 3-cycle to a transposition: orders are incompatible
        with pytest.raises(NotAHomomorphism):
            endo_from_generator_images(G, gens, [gens[1], gens[1]])

    def test_rejects_non_generating_set(self):
        G, gens = sym3()
        with pytest.raises(DoesNotGenerate):
            endo_from_generator_images(G, [gens[0]], [gens[0]])


class TestConjugacy:
    def test_sym3_class_sizes(self):
        G, _ = sym3()
        part = ordinary_conjugacy_classes(G)
        sizes = sorted(part.class_of.count(c) for c in range(part.num_classes))
        assert sizes == [1, 2, 3]

    def test_trivial_group(self):
        assert ordinary_conjugacy_classes(trivial_group()).num_classes == 1

    def test_abelian_classes_are_singletons(self):
        K, _ = klein_four()
        assert ordinary_conjugacy_classes(K).num_classes == 4

    def test_phi_identity_matches_ordinary(self):
        for name, G, _ in finite_catalog():
            phi = identity_endo(G)
            assert (phi_conjugacy_classes(G, phi).num_classes
                    == ordinary_conjugacy_classes(G).num_classes), name

    def test_doubling_on_cyclic6_single_class(self):
        C6, phi = cyclic6_doubling()
        assert phi_conjugacy_classes(C6, phi).num_classes == 1

    def test_klein_swap_two_classes(self):
        K, swap = klein_swap()
        assert phi_conjugacy_classes(K, swap).num_classes == 2

    def test_inner_invariance(self):
        # R(phi o psi) = R(psi o phi) = R(phi) for inner psi
        G, gens = sym3()
        for phi in all_endomorphisms(G, gens):
            base = phi_conjugacy_classes(G, phi).num_classes
            for gamma in G.elements():
                inner = endo_from_generator_images(
                    G, gens, [G.conj(gamma, s) for s in gens])
                left = phi.compose(inner)
                right = inner.compose(phi)
                assert phi_conjugacy_classes(G, left).num_classes == base
                assert phi_conjugacy_classes(G, right).num_classes == base


class TestIterate:
    def test_first_iterate_is_identity_operation(self):
        K, swap = klein_swap()
        assert iterate_endo(swap, 1).image == swap.image

    def test_doubling_squared(self):
        C6, phi = cyclic6_doubling()
        assert iterate_endo(phi, 2).image == tuple((4 * i) % 6 for i in range(6))

    def test_rejects_zero(self):
        K, swap = klein_swap()
        with pytest.raises(ValueError):
            iterate_endo(swap, 0)


class TestEventualImage:
    def test_automorphism_gives_whole_group(self):
        K, swap = klein_swap()
        H, phi_H, embedding = eventual_image(K, swap)
        assert H.order == K.order
        assert embedding == tuple(K.elements())

    def test_doubling_on_cyclic6(self):
        C6, phi = cyclic6_doubling()
        H, phi_H, embedding = eventual_image(C6, phi)
        assert H.order == 3
        assert phi_H.is_bijective()
        assert set(embedding) == {0, 2, 4}

    def test_constant_endomorphism(self):
        G, _ = sym3()
        const = type(identity_endo(G))((G.identity,) * G.order)
        H, _, _ = eventual_image(G, const)
        assert H.order == 1

    def test_class_count_is_preserved(self):
        # reduction to the eventual image does not change the count
        C6, phi = cyclic6_doubling()
        H, phi_H, _ = eventual_image(C6, phi)
        assert (phi_conjugacy_classes(C6, phi).num_classes
                == phi_conjugacy_classes(H, phi_H).num_classes)
