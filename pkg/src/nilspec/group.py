"""2-step nilpotent groups given by commutator structure constants.

Elements are kept in normal form ``x_1^{a_1} ... x_n^{a_n} z_1^{u_1} ... z_m^{u_m}``
and multiplied through the cocycle

    (a, u) * (b, v) = (a + b, u + v + omega(a, b)),
    omega(a, b) = sum_{i > j} a_i b_j c(i, j),  c(i, j) = -c(j, i).

Generator indices are 0-based in the API and 1-based in files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .intlin import IntMatrix, integer_kernel, rank, smith_normal_form


class GroupError(ValueError):
    pass


class NormalizationError(GroupError):
    """The structure matrix has rank below m, so <z> is not the isolator of gamma_2."""


@dataclass(frozen=True)
class GroupElement:
    a: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.u)

    def __repr__(self):
        return f"GroupElement(a={list(self.a)}, u={list(self.u)})"


@dataclass(frozen=True)
class GroupInvariants:
    hirsch: int
    gamma2_rank: int
    class_n: int
    class_m: int
    divisors: tuple[int, ...]
    center_rank: int
    delta: int | None = None
    lam: int | None = None

    @property
    def lambda_(self) -> int | None:
        return self.lam


@dataclass(frozen=True, eq=False)
class TwoStepGroup:
    """Group with n x-generators and m central z-generators.

    ``comm`` lists ``((i, j), c)`` with ``i < j`` meaning ``[x_i, x_j] = z^c``,
    in the order the pairs were given; missing pairs are trivial.
    """

    n: int
    m: int
    comm: tuple[tuple[tuple[int, int], tuple[int, ...]], ...] = ()
    _table: dict = field(init=False, repr=False, compare=False)
    _omega_terms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise GroupError("negative generator count")
        table = {}
        norm = []
        for (i, j), c in self.comm:
            i, j = int(i), int(j)
            if not 0 <= i < j < self.n:
                raise GroupError(f"commutator pair ({i + 1}, {j + 1}) must satisfy 1 <= i < j <= n")
            c = tuple(int(x) for x in c)
            if len(c) != self.m:
                raise GroupError(f"commutator ({i + 1}, {j + 1}) has {len(c)} z-exponents, expected {self.m}")
            if (i, j) in table:
                raise GroupError(f"commutator pair ({i + 1}, {j + 1}) given twice")
            table[(i, j)] = c
            norm.append(((i, j), c))
        object.__setattr__(self, "comm", tuple(norm))
        object.__setattr__(self, "_table", table)
        terms = tuple((j, i, tuple(-x for x in c)) for (i, j), c in table.items() if any(c))
        object.__setattr__(self, "_omega_terms", terms)

    @classmethod
    def from_pairs(cls, n: int, m: int, pairs: Mapping[tuple[int, int], Sequence[int]]) -> TwoStepGroup:
        return cls(n, m, tuple(((i, j), tuple(c)) for (i, j), c in pairs.items()))

    def c(self, i: int, j: int) -> tuple[int, ...]:
        """Structure constant for any ordered pair, antisymmetrically extended."""
        if i < j:
            return self._table.get((i, j), (0,) * self.m)
        if i > j:
            return tuple(-x for x in self._table.get((j, i), (0,) * self.m))
        return (0,) * self.m

    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.n), 2))

    def structure_matrix(self) -> IntMatrix:
        """m x n(n-1)/2 matrix; column (i, j) is c(i, j), pairs in lexicographic order."""
        cols = [self.c(i, j) for i, j in self.pairs()]
        return IntMatrix.from_rows([[col[k] for col in cols] for k in range(self.m)], cols=len(cols))

    def is_normalized(self) -> bool:
        return rank(self.structure_matrix()) == self.m

    def require_normalized(self):
        if not self.is_normalized():
            raise NormalizationError(
                f"structure matrix has rank {rank(self.structure_matrix())} < m = {self.m}"
            )

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, (0,) * self.m)

    def x(self, i: int, k: int = 1) -> GroupElement:
        return GroupElement(tuple(k if t == i else 0 for t in range(self.n)), (0,) * self.m)

    def z(self, j: int, k: int = 1) -> GroupElement:
        return GroupElement((0,) * self.n, tuple(k if t == j else 0 for t in range(self.m)))

    def element(self, a: Sequence[int], u: Sequence[int] = ()) -> GroupElement:
        g = GroupElement(a, u or (0,) * self.m)
        self.check(g)
        return g

    def check(self, g: GroupElement):
        if len(g.a) != self.n or len(g.u) != self.m:
            raise GroupError(f"element of shape ({len(g.a)}, {len(g.u)}) in group with (n, m) = ({self.n}, {self.m})")

    def omega(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.m
        for i, j, c in self._omega_terms:
            s = a[i] * b[j]
            if s:
                for k, ck in enumerate(c):
                    out[k] += s * ck
        return tuple(out)

    def beta(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """z-exponents of the commutator of x^a and x^b."""
        return tuple(p - q for p, q in zip(self.omega(a, b), self.omega(b, a)))

    def __eq__(self, other):
        if not isinstance(other, TwoStepGroup):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.structure_matrix() == other.structure_matrix()

    def __hash__(self):
        return hash((self.n, self.m, self.structure_matrix()))


def multiply(G: TwoStepGroup, g: GroupElement, h: GroupElement) -> GroupElement:
    G.check(g)
    G.check(h)
    w = G.omega(g.a, h.a)
    return GroupElement(
        tuple(x + y for x, y in zip(g.a, h.a)),
        tuple(x + y + z for x, y, z in zip(g.u, h.u, w)),
    )


def inverse(G: TwoStepGroup, g: GroupElement) -> GroupElement:
    G.check(g)
    w = G.omega(g.a, g.a)
    return GroupElement(tuple(-x for x in g.a), tuple(-x + y for x, y in zip(g.u, w)))


def power(G: TwoStepGroup, g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(G, inverse(G, g), -k)
    G.check(g)
    w = G.omega(g.a, g.a)
    c2 = comb(k, 2)
    return GroupElement(tuple(k * x for x in g.a), tuple(k * x + c2 * y for x, y in zip(g.u, w)))


def commutator(G: TwoStepGroup, g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g^-1 h^-1 g h; always central."""
    G.check(g)
    G.check(h)
    return GroupElement((0,) * G.n, G.beta(g.a, h.a))


def product(G: TwoStepGroup, elements: Iterable[GroupElement]) -> GroupElement:
    out = G.identity()
    for g in elements:
        out = multiply(G, out, g)
    return out


def evaluate_word(G: TwoStepGroup, word: Iterable[tuple[str, int, int]]) -> GroupElement:
    """Normal form of a word given as (kind, index, exponent), kind 'x' or 'z'."""
    out = G.identity()
    for kind, idx, e in word:
        gen = G.x(idx) if kind == "x" else G.z(idx)
        out = multiply(G, out, power(G, gen, e))
    return out


def pairing_matrix(G: TwoStepGroup) -> IntMatrix:
    """(m*n) x n matrix of a -> (beta(a, e_1), ..., beta(a, e_n))."""
    rows = []
    for j in range(G.n):
        for k in range(G.m):
            # beta(e_i, e_j)[k] = c(i, j)[k]
            rows.append([G.c(i, j)[k] for i in range(G.n)])
    return IntMatrix.from_rows(rows, cols=G.n)


def center_kernel(G: TwoStepGroup) -> list[tuple[int, ...]]:
    """Z-basis of the x-exponent vectors a with x^a central."""
    return integer_kernel(pairing_matrix(G))


def center_basis(G: TwoStepGroup) -> list[GroupElement]:
    out = [G.z(j) for j in range(G.m)]
    out += [GroupElement(v, (0,) * G.m) for v in center_kernel(G)]
    return out


def invariants(G: TwoStepGroup) -> GroupInvariants:
    C = G.structure_matrix()
    snf = smith_normal_form(C)
    r = snf.rank
    delta = lam = None
    if r == G.m == 2:
        d1, d2 = snf.divisors[:2]
        delta, lam = d1, d2 // d1
    return GroupInvariants(
        hirsch=G.n + G.m,
        gamma2_rank=r,
        class_n=G.n + (G.m - r),
        class_m=r,
        divisors=snf.divisors,
        center_rank=G.m + len(center_kernel(G)),
        delta=delta,
        lam=lam,
    )
