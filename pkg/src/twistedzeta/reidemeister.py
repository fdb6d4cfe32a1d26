"""Reidemeister numbers by closed formula and by brute-force oracle.

Three settings, each with two or three independent routes that must agree:

* finite groups: count of ordinary conjugacy classes fixed by the induced
  class map, equal to the trace of precomposition on class functions, equal
  to the exhaustive twisted-conjugacy class count;
* free abelian Z^k: |det(I - M)|, equal to the Smith coset count of
  (I - M)Z^k, equal to the signed alternating exterior trace;
* products Z^k x F: the product formula, the signed exterior/class trace,
  and a coset-by-coset enumeration that decides twisted conjugacy through
  the explicit two-condition criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfiniteReidemeister, NotAHomomorphism
from .groups import (
    ConjugacyPartition,
    FiniteGroup,
    GroupEndomorphism,
    iterate_endo,
    ordinary_conjugacy_classes,
    phi_conjugacy_classes,
    trivial_group,
)
from .intlinalg import (
    IntMatrix,
    count_eigen_signs,
    det,
    exterior_power,
    kron,
    mat_pow,
    smith_normal_form,
    unimodular_inverse,
)


@dataclass(frozen=True)
class ClassFunctionMap:
    """Matrix of f -> f o phi on the characteristic-function basis.

    B[c][c'] = 1 when phi sends the members of class c' into class c.
    Each column carries exactly one 1, and the trace counts the classes
    fixed by the induced class map.
    """

    B: IntMatrix


def r_finite(G: FiniteGroup, phi: GroupEndomorphism) -> int:
    """Number of ordinary conjugacy classes fixed by the induced class map."""
    part = ordinary_conjugacy_classes(G)
    return sum(
        1
        for rep in part.representatives
        if part.class_of[phi(rep)] == part.class_of[rep]
    )


def class_function_matrix(G: FiniteGroup, phi: GroupEndomorphism) -> ClassFunctionMap:
    part = ordinary_conjugacy_classes(G)
    c = part.num_classes
    B = [[0] * c for _ in range(c)]
    for src, rep in enumerate(part.representatives):
        B[part.class_of[phi(rep)]][src] = 1
    return ClassFunctionMap(IntMatrix(B, rows=c, cols=c))


def r_abelian(M: IntMatrix) -> int:
    """|det(I - M)|, the twisted class count on Z^k."""
    d = det(IntMatrix.identity(M.rows) - M)
    if d == 0:
        raise InfiniteReidemeister("det(I - M) = 0", n=1)
    return abs(d)


def r_abelian_smith(M: IntMatrix) -> int:
    """Coset-count oracle: order of Z^k / (I - M)Z^k via the Smith diagonal."""
    snf = smith_normal_form(IntMatrix.identity(M.rows) - M)
    if any(d == 0 for d in snf.diagonal):
        raise InfiniteReidemeister("(I - M) is singular", n=1)
    count = 1
    for d in snf.diagonal:
        count *= d
    return count


def r_abelian_trace(M: IntMatrix) -> int:
    """Signed alternating exterior trace (-1)^(r+p) sum_i (-1)^i Tr wedge^i M."""
    p, r = count_eigen_signs(M)
    k = M.rows
    total = sum(
        (-1) ** i * exterior_power(M, i).trace() for i in range(k + 1)
    )
    value = (-1) ** (r + p) * total
    if value == 0:
        raise InfiniteReidemeister("det(I - M) = 0", n=1)
    return value


@dataclass(frozen=True)
class ProductEndomorphism:
    """Endomorphism of Z^k x F as (v, f) -> (M v, psi(v) * phi_F(f)).

    ``psi`` lists the F-images of the k standard basis vectors.  The
    constructor checks the homomorphism property on generators: the psi
    images must commute pairwise (psi is a homomorphism) and must commute
    with the image of phi_F (the mixed products must agree).
    """

    M: IntMatrix
    psi: tuple[int, ...]
    phiF: GroupEndomorphism
    F: FiniteGroup

    def __post_init__(self):
        if not self.M.is_square:
            raise ValueError("M must be square")
        if len(self.psi) != self.M.rows:
            raise ValueError("psi must give one F-element per basis vector")
        self.phiF.validate(self.F)
        F = self.F
        for a, b in itertools.combinations(self.psi, 2):
            if F.mult[a][b] != F.mult[b][a]:
                raise NotAHomomorphism("psi images do not commute pairwise")
        image_of_phiF = set(self.phiF.image)
        for a in self.psi:
            for f in image_of_phiF:
                if F.mult[a][f] != F.mult[f][a]:
                    raise NotAHomomorphism(
                        "a psi image does not commute with the image of phi_F"
                    )

    @property
    def k(self) -> int:
        return self.M.rows

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> "ProductEndomorphism":
        """Pure lattice case: trivial finite part."""
        F = trivial_group()
        return cls(M, tuple([F.identity] * M.rows), GroupEndomorphism((0,)), F)

    def psi_value(self, v: tuple[int, ...]) -> int:
        """psi(v) = product of psi_i^(v_i) in F."""
        acc = self.F.identity
        for base, e in zip(self.psi, v):
            acc = self.F.mult[acc][self.F.power(base, e)]
        return acc

    def apply(self, v: tuple[int, ...], f: int) -> tuple[tuple[int, ...], int]:
        return self.M.apply(v), self.F.mult[self.psi_value(v)][self.phiF(f)]

    def apply_iterated(self, v, f, n: int):
        for _ in range(n):
            v, f = self.apply(v, f)
        return v, f

    def lattice_finite_part(self, v: tuple[int, ...], n: int) -> int:
        """F-component of the n-th iterate applied to (v, identity)."""
        _, f = self.apply_iterated(v, self.F.identity, n)
        return f


def _check_finite_iterate(P: ProductEndomorphism, n: int) -> IntMatrix:
    Mn = mat_pow(P.M, n)
    if det(IntMatrix.identity(P.k) - Mn) == 0:
        raise InfiniteReidemeister(f"det(I - M^{n}) = 0", n=n)
    return Mn


def r_product(P: ProductEndomorphism, n: int = 1) -> int:
    """Product formula: |det(I - M^n)| times the finite count for phi_F^n."""
    Mn = _check_finite_iterate(P, n)
    return r_abelian(Mn) * r_finite(P.F, iterate_endo(P.phiF, n))


def r_product_trace(P: ProductEndomorphism, n: int = 1) -> int:
    """Signed trace (-1)^(r+p*n) sum_i (-1)^i Tr (wedge^i M (x) B)^n."""
    _check_finite_iterate(P, n)
    p, r = count_eigen_signs(P.M)
    B = class_function_matrix(P.F, P.phiF).B
    total = 0
    for i in range(P.k + 1):
        X = kron(exterior_power(P.M, i), B)
        total += (-1) ** i * mat_pow(X, n).trace()
    return (-1) ** ((r + p * n) % 2) * total


def coset_representatives(A: IntMatrix) -> list[tuple[int, ...]]:
    """Representatives of Z^k / A Z^k for nonsingular A, via the Smith form."""
    if det(A) == 0:
        raise InfiniteReidemeister("lattice quotient is infinite")
    snf = smith_normal_form(A)
    Linv = unimodular_inverse(snf.left)
    reps = []
    for x in itertools.product(*(range(d) for d in snf.diagonal)):
        reps.append(Linv.apply(x))
    return reps


def solve_lattice(A: IntMatrix, target: tuple[int, ...]):
    """Integer solution w of A w = target, or None if target is not in A Z^k."""
    snf = smith_normal_form(A)
    x = snf.left.apply(target)
    w = []
    for xi, d in zip(x, snf.diagonal):
        if d == 0:
            if xi != 0:
                return None
            w.append(0)
        else:
            if xi % d != 0:
                return None
            w.append(xi // d)
    return snf.right.apply(tuple(w))


def r_product_oracle(P: ProductEndomorphism, n: int = 1) -> int:
    """Independent enumeration of the twisted classes of the n-th iterate.

    Representatives (v, f) run over lattice-coset representatives times F.
    Two of them are equivalent iff v2 - v1 lies in (I - M^n)Z^k and some
    h in F satisfies h f1 = f2 * c * phi_F^n(h), where c is the F-part of
    the iterate applied to the exact integer solution of
    (I - M^n) w = v2 - v1.
    """
    Mn = _check_finite_iterate(P, n)
    A = IntMatrix.identity(P.k) - Mn
    phin = iterate_endo(P.phiF, n)
    F = P.F
    snf = smith_normal_form(A)
    Linv = unimodular_inverse(snf.left)
    reps = [Linv.apply(x)
            for x in itertools.product(*(range(d) for d in snf.diagonal))]
    elements = [(v, f) for v in reps for f in F.elements()]

    def solve(delta):
        x = snf.left.apply(delta)
        w = []
        for xi, d in zip(x, snf.diagonal):
            if xi % d != 0:
                return None
            w.append(xi // d)
        return snf.right.apply(tuple(w))

    def equivalent(g1, g2) -> bool:
        v1, f1 = g1
        v2, f2 = g2
        delta = tuple(a - b for a, b in zip(v2, v1))
        w = solve(delta)
        if w is None:
            return False
        c = P.lattice_finite_part(w, n)
        f2c = F.mult[f2][c]
        return any(
            F.mult[h][f1] == F.mult[f2c][phin(h)] for h in F.elements()
        )

    # union-find over the representatives
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if find(i) != find(j) and equivalent(elements[i], elements[j]):
                parent[find(j)] = find(i)
    return len({find(i) for i in range(len(elements))})
