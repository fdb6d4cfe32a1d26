"""Fox calculus on free groups and Nielsen-zeta radius-of-convergence bounds.

Words are tuples of signed generator indices (+j for the j-th generator,
-j for its inverse, j >= 1), always freely reduced.  In text, lowercase
letters are generators and uppercase letters their inverses: "abA" means
a b a^-1.  Group-ring elements are sparse integer combinations of words;
the norm of an element is the sum of the absolute coefficients and matrix
norms are total entry norms.

The chain data of a bouquet of r circles is the pair of ring matrices
(1) and D = (d b_i / d a_j); the two radius bounds are the reciprocals of
the max matrix norm and of the max spectral radius of the entrywise norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import NotSquare
from .intlinalg import IntMatrix

Word = tuple[int, ...]


def free_reduce(letters) -> Word:
    """Canonical freely reduced form of a letter sequence."""
    stack: list[int] = []
    for s in letters:
        if s == 0:
            raise ValueError("letter 0 is not a generator")
        if stack and stack[-1] == -s:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def word_inverse(w: Word) -> Word:
    return tuple(-s for s in reversed(w))


def parse_word(text: str, rank: int | None = None) -> Word:
    letters = []
    for ch in text:
        if ch.islower():
            letters.append(ord(ch) - ord("a") + 1)
        elif ch.isupper():
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError(f"invalid word character: {ch!r}")
    if rank is not None and any(abs(s) > rank for s in letters):
        raise ValueError(f"word {text!r} uses a generator beyond rank {rank}")
    return free_reduce(letters)


def word_to_str(w: Word) -> str:
    if not w:
        return "1"
    return "".join(
        chr(ord("a") + s - 1) if s > 0 else chr(ord("A") - s - 1) for s in w
    )


class GroupRingElement:
    """Sparse element of the integral group ring of a free group."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for w, c in terms.items():
                if c:
                    cleaned[tuple(w)] = int(c)
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({(): 1})

    @classmethod
    def from_word(cls, w: Word, coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(w): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = free_reduce(w1 + w2)
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            word = word_to_str(w)
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_norm(x: GroupRingElement) -> int:
    """Sum of absolute coefficients."""
    return sum(abs(c) for c in x.terms.values())


@dataclass(frozen=True)
class FreeGroupEndo:
    """Endomorphism of a free group, given by generator images."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        for w in self.images:
            if any(abs(s) < 1 or abs(s) > self.rank for s in w):
                raise ValueError("image uses a generator outside the rank")
            if free_reduce(w) != w:
                raise ValueError("images must be freely reduced")

    @classmethod
    def from_strings(cls, rank: int, images: list[str]) -> "FreeGroupEndo":
        return cls(rank, tuple(parse_word(s, rank) for s in images))

    @classmethod
    def identity(cls, rank: int) -> "FreeGroupEndo":
        return cls(rank, tuple((j,) for j in range(1, rank + 1)))

    def apply_word(self, w: Word) -> Word:
        out: list[int] = []
        for s in w:
            img = self.images[abs(s) - 1]
            out.extend(img if s > 0 else word_inverse(img))
        return free_reduce(out)

    def apply(self, x: GroupRingElement) -> GroupRingElement:
        out: dict[Word, int] = {}
        for w, c in x.terms.items():
            iw = self.apply_word(w)
            out[iw] = out.get(iw, 0) + c
        return GroupRingElement(out)


class GroupRingMatrix:
    """Rectangular matrix over the integral group ring of a free group."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(row) != self.cols for row in entries):
            raise ValueError("ragged entries")
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def identity(cls, n: int) -> "GroupRingMatrix":
        one, zero = GroupRingElement.one(), GroupRingElement.zero()
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, GroupRingMatrix)
                and self.entries == other.entries)

    def __matmul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = GroupRingElement.zero()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return GroupRingMatrix(out)

    def map_entries(self, fn) -> "GroupRingMatrix":
        return GroupRingMatrix(
            [[fn(x) for x in row] for row in self.entries]
        )

    def trace(self) -> GroupRingElement:
        if self.rows != self.cols:
            raise NotSquare("trace of a non-square ring matrix")
        acc = GroupRingElement.zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc


def fox_derivative(w: Word, j: int) -> GroupRingElement:
    """Fox partial derivative d(w)/d(a_j) in the integral group ring."""
    if j < 1:
        raise ValueError("generator index must be >= 1")
    out: dict[Word, int] = {}
    prefix: Word = ()
    for s in w:
        if s == j:
            out[prefix] = out.get(prefix, 0) + 1
        prefix_next = free_reduce(prefix + (s,))
        if s == -j:
            out[prefix_next] = out.get(prefix_next, 0) - 1
        prefix = prefix_next
    return GroupRingElement(out)


def jacobian(phi: FreeGroupEndo) -> GroupRingMatrix:
    """Fox Jacobian: entry (i, j) is d(image_i)/d(a_j)."""
    r = phi.rank
    return GroupRingMatrix(
        [[fox_derivative(phi.images[i], j + 1) for j in range(r)]
         for i in range(r)]
    )


def matrix_norm(A: GroupRingMatrix) -> int:
    return sum(ring_norm(x) for row in A.entries for x in row)


def matrix_of_norms(A: GroupRingMatrix) -> IntMatrix:
    return IntMatrix(
        [[ring_norm(x) for x in row] for row in A.entries],
        rows=A.rows, cols=A.cols)


class SpectralRadius(NamedTuple):
    value: float
    low: float
    high: float


def _strongly_connected_components(adj: list[list[bool]]) -> list[list[int]]:
    """Iterative Tarjan on a dense adjacency matrix."""
    n = len(adj)
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for w in range(pi, n):
                if not adj[v][w]:
                    continue
                if index[w] is None:
                    work[-1] = (v, w + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def spectral_radius(A: IntMatrix, rel_tol: float = 1e-12) -> SpectralRadius:
    """Perron root of a non-negative integer matrix with a certified bracket.

    Power iteration with Collatz-Wielandt row-ratio bounds, run per
    strongly connected component (iteration on a reducible matrix stalls);
    the shift A + I makes each irreducible block primitive.
    """
    if not A.is_square:
        raise NotSquare("spectral radius of a non-square matrix")
    if any(a < 0 for row in A.entries for a in row):
        raise ValueError("matrix must be non-negative")
    n = A.rows
    if n == 0:
        return SpectralRadius(0.0, 0.0, 0.0)
    adj = [[A.entries[i][j] > 0 for j in range(n)] for i in range(n)]
    best = SpectralRadius(0.0, 0.0, 0.0)
    for comp in _strongly_connected_components(adj):
        if len(comp) == 1:
            i = comp[0]
            v = float(A.entries[i][i])
            cand = SpectralRadius(v, v, v)
        else:
            sub = [[float(A.entries[i][j] + (1 if i == j else 0))
                    for j in comp] for i in comp]
            m = len(comp)
            x = [1.0] * m
            lo, hi = 0.0, float("inf")
            for _ in range(100000):
                y = [sum(sub[i][j] * x[j] for j in range(m)) for i in range(m)]
                ratios = [y[i] / x[i] for i in range(m)]
                lo, hi = min(ratios), max(ratios)
                if hi - lo <= rel_tol * hi:
                    break
                top = max(y)
                x = [yi / top for yi in y]
            cand = SpectralRadius((lo + hi) / 2.0 - 1.0, lo - 1.0, hi - 1.0)
        if cand.value > best.value:
            best = cand
    return best


def chain_matrices(phi: FreeGroupEndo) -> list[GroupRingMatrix]:
    """Lifted chain data of the rank-r bouquet: [(1), Fox Jacobian]."""
    return [GroupRingMatrix.identity(1), jacobian(phi)]


class RadiusBounds(NamedTuple):
    bound_norm: Fraction
    bound_spectral: float


def nielsen_radius_bounds(phi: FreeGroupEndo) -> RadiusBounds:
    """Two lower bounds for the Nielsen-zeta radius of convergence.

    1 / max_d ||F_d|| and 1 / max_d s(F_d^norm) over the chain matrices.
    Prefixing every basis word with the mapping-torus generator is a
    bijection on basis elements, so the extra letter never changes a norm.
    """
    mats = chain_matrices(phi)
    max_norm = max(matrix_norm(A) for A in mats)
    max_spec = max(spectral_radius(matrix_of_norms(A)).value for A in mats)
    return RadiusBounds(Fraction(1, max_norm), 1.0 / max_spec)


def twisted_power_norm(phi: FreeGroupEndo, A: GroupRingMatrix, n: int) -> int:
    """||(zA)^n|| via g z = z phi(g): the twisted product phi^(n-1)(A)...phi(A) A."""
    if A.rows != A.cols:
        raise NotSquare("twisted power of a non-square matrix")
    if n < 1:
        raise ValueError("n must be >= 1")
    product = A
    for _ in range(n - 1):
        product = product.map_entries(phi.apply) @ A
    return matrix_norm(product)
