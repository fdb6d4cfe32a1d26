"""Finite groups as explicit multiplication tables.

Everything here is index-based: a group of order n has elements 0..n-1 and is
stored as its full n x n multiplication table.  This keeps conjugacy searches
and homomorphism checks exhaustive and exact, which is the whole point: these
brute-force enumerations are the oracles against which the closed formulas in
the other modules are judged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ClosureTooLarge,
    DoesNotGenerate,
    NotAHomomorphism,
    NotAPermutation,
)

DEFAULT_ORDER_CAP = 20000


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mult[g][h]`` is the product g*h, ``inv[g]`` the inverse of g and
    ``identity`` the index of the neutral element.  ``names`` is optional
    display labelling only.
    """

    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int = 0
    names: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.mult)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conj(self, gamma: int, a: int) -> int:
        """gamma * a * gamma^-1."""
        return self.mult[self.mult[gamma][a]][self.inv[gamma]]

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inv[g], -n
        acc = self.identity
        for _ in range(n):
            acc = self.mult[acc][g]
        return acc

    def is_abelian(self) -> bool:
        return all(
            self.mult[a][b] == self.mult[b][a]
            for a in self.elements()
            for b in self.elements()
        )

    def check_axioms(self) -> None:
        """Full O(order^3) verification of the group axioms.

        Raises ValueError on the first violation.
        """
        n = self.order
        e = self.identity
        if self.inv[e] != e or any(len(row) != n for row in self.mult):
            raise ValueError("malformed tables")
        for g in range(n):
            if self.mult[e][g] != g or self.mult[g][e] != g:
                raise ValueError(f"{e} is not a two-sided identity at {g}")
            if self.mult[g][self.inv[g]] != e or self.mult[self.inv[g]][g] != e:
                raise ValueError(f"inv[{g}] is not a two-sided inverse")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise ValueError(f"associativity fails at ({a},{b},{c})")

    def subgroup(self, elems: list[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """Re-index a closed subset as a standalone group.

        Returns the subgroup and the embedding (new index -> old index).
        Raises ValueError if ``elems`` is not closed under the group law.
        """
        embedding = tuple(sorted(set(elems)))
        back = {g: i for i, g in enumerate(embedding)}
        if self.identity not in back:
            raise ValueError("subset does not contain the identity")
        mult = []
        for a in embedding:
            row = []
            for b in embedding:
                ab = self.mult[a][b]
                if ab not in back:
                    raise ValueError("subset is not closed under multiplication")
                row.append(back[ab])
            mult.append(tuple(row))
        inv = tuple(back[self.inv[g]] for g in embedding)
        names = None
        if self.names is not None:
            names = tuple(self.names[g] for g in embedding)
        sub = FiniteGroup(tuple(mult), inv, back[self.identity], names)
        return sub, embedding


@dataclass(frozen=True)
class GroupEndomorphism:
    """An endomorphism stored as its full element table."""

    image: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image[g]

    def compose(self, other: "GroupEndomorphism") -> "GroupEndomorphism":
        """self after other: g -> self(other(g))."""
        return GroupEndomorphism(tuple(self.image[g] for g in other.image))

    def is_bijective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def validate(self, G: FiniteGroup) -> None:
        if len(self.image) != G.order:
            raise NotAHomomorphism("image table has wrong length")
        if self.image[G.identity] != G.identity:
            raise NotAHomomorphism("identity is not preserved")
        for g in G.elements():
            for h in G.elements():
                if self.image[G.mult[g][h]] != G.mult[self.image[g]][self.image[h]]:
                    raise NotAHomomorphism(
                        f"phi(g*h) != phi(g)*phi(h) at g={g}, h={h}"
                    )


@dataclass(frozen=True)
class ConjugacyPartition:
    """A partition of a group into (possibly twisted) conjugacy classes."""

    class_of: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.representatives)


def identity_endo(G: FiniteGroup) -> GroupEndomorphism:
    return GroupEndomorphism(tuple(G.elements()))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), (0,), 0, ("e",))


def _compose_perm(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(x) = p[q[x]]."""
    return tuple(p[x] for x in q)


def group_from_permutations(
    degree: int,
    generators: list[tuple[int, ...]],
    cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close a set of permutations of {0..degree-1} under composition.

    Elements are canonically ordered by their image tuples, which puts the
    identity at index 0.
    """
    if degree < 1:
        raise NotAPermutation("degree must be positive")
    gens = []
    for p in generators:
        p = tuple(p)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise NotAPermutation(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(p)

    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                pq = _compose_perm(p, q)
                if pq not in seen:
                    seen.add(pq)
                    nxt.append(pq)
                    if len(seen) > cap:
                        raise ClosureTooLarge(
                            f"closure exceeds cap of {cap} elements"
                        )
        frontier = nxt

    perms = sorted(seen)
    index = {p: i for i, p in enumerate(perms)}
    mult = tuple(
        tuple(index[_compose_perm(p, q)] for q in perms) for p in perms
    )
    inv_of = {}
    for p in perms:
        pinv = tuple(sorted(range(degree), key=lambda x: p[x]))
        inv_of[index[p]] = index[pinv]
    inv = tuple(inv_of[i] for i in range(len(perms)))
    names = tuple(str(p) for p in perms)
    return FiniteGroup(mult, inv, index[ident], names)


def generated_subgroup(G: FiniteGroup, generators: list[int]) -> set[int]:
    """Closure of a set of elements inside G."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                gs = G.mult[g][s]
                if gs not in seen:
                    seen.add(gs)
                    nxt.append(gs)
        frontier = nxt
    return seen


def endo_from_generator_images(
    G: FiniteGroup, generators: list[int], images: list[int]
) -> GroupEndomorphism:
    """Extend generator images to the whole group by word expansion.

    Raises DoesNotGenerate if the generators do not generate G, and
    NotAHomomorphism if the assignment is inconsistent.
    """
    if len(generators) != len(images):
        raise NotAHomomorphism("generators and images differ in length")
    if generated_subgroup(G, generators) != set(G.elements()):
        raise DoesNotGenerate("the given elements do not generate the group")

    table: dict[int, int] = {G.identity: G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, t in zip(generators, images):
                gs = G.mult[g][s]
                img = G.mult[table[g]][t]
                if gs in table:
                    if table[gs] != img:
                        raise NotAHomomorphism(
                            f"two words for element {gs} receive different images"
                        )
                else:
                    table[gs] = img
                    nxt.append(gs)
        frontier = nxt

    phi = GroupEndomorphism(tuple(table[g] for g in G.elements()))
    phi.validate(G)
    return phi


def _partition_from_orbits(G: FiniteGroup, orbit) -> ConjugacyPartition:
    class_of = [-1] * G.order
    reps = []
    for a in G.elements():
        if class_of[a] >= 0:
            continue
        cid = len(reps)
        reps.append(a)
        for b in orbit(a):
            class_of[b] = cid
    return ConjugacyPartition(tuple(class_of), tuple(reps))


def ordinary_conjugacy_classes(G: FiniteGroup) -> ConjugacyPartition:
    def orbit(a):
        return {G.conj(g, a) for g in G.elements()}

    return _partition_from_orbits(G, orbit)


def phi_conjugacy_classes(
    G: FiniteGroup, phi: GroupEndomorphism
) -> ConjugacyPartition:
    """Exhaustive twisted conjugacy: a ~ g * a * phi(g)^-1.

    The class count is the Reidemeister number of phi; this is the
    brute-force oracle for every finite-group formula in the package.
    """

    def orbit(a):
        return {G.mult[G.mult[g][a]][G.inv[phi(g)]] for g in G.elements()}

    return _partition_from_orbits(G, orbit)


def iterate_endo(phi: GroupEndomorphism, n: int) -> GroupEndomorphism:
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = phi
    for _ in range(n - 1):
        acc = phi.compose(acc)
    return acc


def eventual_image(
    G: FiniteGroup, phi: GroupEndomorphism
) -> tuple[FiniteGroup, GroupEndomorphism, tuple[int, ...]]:
    """Stabilized image subgroup H = phi^n(G) and the restriction phi|_H.

    The restriction is an automorphism of H.  Returns (H, phi_H, embedding)
    where embedding maps H indices to G indices.
    """
    current = set(G.elements())
    while True:
        nxt = {phi(g) for g in current}
        if nxt == current:
            break
        current = nxt
    H, embedding = G.subgroup(sorted(current))
    back = {g: i for i, g in enumerate(embedding)}
    phi_H = GroupEndomorphism(tuple(back[phi(g)] for g in embedding))
    return H, phi_H, embedding


def all_endomorphisms(
    G: FiniteGroup, generators: list[int]
) -> list[GroupEndomorphism]:
    """Every endomorphism found by searching over generator images."""
    found = []
    seen_tables = set()
    for images in itertools.product(G.elements(), repeat=len(generators)):
        try:
            phi = endo_from_generator_images(G, generators, list(images))
        except NotAHomomorphism:
            continue
        if phi.image not in seen_tables:
            seen_tables.add(phi.image)
            found.append(phi)
    return found
