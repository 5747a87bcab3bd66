"""Brute-force twisted-conjugacy counts in finite quotients.

Nothing here uses the determinant formula: classes are counted as orbits,
once by union-find over the generators' action and once by twisted Burnside.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from math import gcd, prod

from .group import GroupElement, TwoStepGroup
from .intlin import IntMatrix, as_matrix, smith_normal_form
from .morphism import EndoData, apply, verify
from .reidemeister import reidemeister_number

DEFAULT_BUDGET = 10 ** 6


class BudgetError(RuntimeError):
    pass


class ModulusError(ValueError):
    pass


def element_budget() -> int:
    raw = os.environ.get("NILSPEC_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class UnionFind:
    """Disjoint sets over range(size), path halving plus union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.count -= 1

    def orbit_sizes(self) -> list[int]:
        return [self.size[x] for x in range(len(self.parent)) if self.parent[x] == x]


def _encode(coords, M):
    idx = 0
    for c in coords:
        idx = idx * M + c
    return idx


def abelian_twisted_classes(A, M: int) -> int:
    """Orbits of (Z/M)^k under x -> x + (I - A) c."""
    A = as_matrix(A)
    if M < 2:
        raise ModulusError("modulus must be at least 2")
    k = A.rows
    size = M ** k
    if size > element_budget():
        raise BudgetError(f"{size} points exceed the budget of {element_budget()}")
    shifts = [tuple(((1 if i == j else 0) - A[i, j]) % M for i in range(k)) for j in range(k)]
    uf = UnionFind(size)
    for x in product(range(M), repeat=k):
        ix = _encode(x, M)
        for s in shifts:
            uf.union(ix, _encode([(a + b) % M for a, b in zip(x, s)], M))
    return uf.count


def abelian_closed_form(A, M: int) -> int:
    """prod gcd(d_i, M) over the Smith divisors of I - A (zero divisor -> M)."""
    A = as_matrix(A)
    snf = smith_normal_form(IntMatrix.identity(A.rows) - A)
    return prod(gcd(d, M) if d else M for d in snf.divisors)


@dataclass(frozen=True)
class FiniteQuotient:
    """G with normal-form coordinates read mod an odd N."""

    G: TwoStepGroup
    N: int

    def __post_init__(self):
        if self.N < 3 or self.N % 2 == 0:
            raise ModulusError(f"modulus must be odd and at least 3, got {self.N}")
        size = self.N ** (self.G.n + self.G.m)
        if size > element_budget():
            raise BudgetError(f"|G_N| = {size} exceeds the budget of {element_budget()}")

    @property
    def order(self) -> int:
        return self.N ** (self.G.n + self.G.m)

    def reduce(self, g: GroupElement) -> tuple[int, ...]:
        N = self.N
        return tuple(x % N for x in g.a) + tuple(x % N for x in g.u)

    def split(self, t):
        return t[:self.G.n], t[self.G.n:]

    def mul(self, s, t):
        G, N = self.G, self.N
        a, u = self.split(s)
        b, v = self.split(t)
        w = G.omega(a, b)
        return tuple((x + y) % N for x, y in zip(a, b)) + tuple((x + y + z) % N for x, y, z in zip(u, v, w))

    def inv(self, s):
        G, N = self.G, self.N
        a, u = self.split(s)
        w = G.omega(a, a)
        return tuple(-x % N for x in a) + tuple((-x + y) % N for x, y in zip(u, w))

    def elements(self):
        return product(range(self.N), repeat=self.G.n + self.G.m)

    def encode(self, t) -> int:
        return _encode(t, self.N)

    def generators(self):
        G = self.G
        return [self.reduce(G.x(i)) for i in range(G.n)] + [self.reduce(G.z(j)) for j in range(G.m)]


def induced_map(q: FiniteQuotient, e: EndoData):
    """phi on G_N, checked to be a homomorphism on all generator pairs."""
    G = q.G
    e = verify(G, e)

    def phi(t):
        a, u = q.split(t)
        return q.reduce(apply(G, e, GroupElement(a, u)))

    gens = q.generators()
    for s in gens:
        for t in gens:
            if phi(q.mul(s, t)) != q.mul(phi(s), phi(t)):
                raise ArithmeticError("induced map on the quotient is not a homomorphism")
    return phi


def twisted_classes_union_find(q: FiniteQuotient, e: EndoData) -> tuple[int, list[int]]:
    """Orbits of x -> c x phi(c)^-1, generated by c running over the generators."""
    phi = induced_map(q, e)
    moves = [(c, q.inv(phi(c))) for c in q.generators()]
    uf = UnionFind(q.order)
    for x in q.elements():
        ix = q.encode(x)
        for c, ci in moves:
            uf.union(ix, q.encode(q.mul(q.mul(c, x), ci)))
    sizes = uf.orbit_sizes()
    if sum(sizes) != q.order:
        raise ArithmeticError("orbit sizes do not add up to |G_N|")
    return uf.count, sizes


def twisted_classes_burnside(q: FiniteQuotient, e: EndoData) -> int:
    """(1/|G_N|) sum_c |{x : c x phi(c)^-1 = x}|.

    c x phi(c)^-1 = x  iff  c [c, x] = phi(c), so only x's image in the
    abelianisation matters and each c is handled by a histogram of [c, x].
    """
    G, N = q.G, q.N
    phi = induced_map(q, e)
    n, m = G.n, G.m
    xs = list(product(range(N), repeat=n))
    A = verify(G, e).A
    total = 0
    for a in xs:
        if tuple(x % N for x in A.apply(a)) != a:
            continue
        hist: dict = {}
        for b in xs:
            key = tuple(x % N for x in G.beta(a, b))
            hist[key] = hist.get(key, 0) + 1
        for u in product(range(N), repeat=m):
            c = a + u
            fa, fu = q.split(phi(c))
            if fa != a:
                continue
            # need u + beta(a, b) = phi(c).u (mod N)
            key = tuple((y - x) % N for x, y in zip(u, fu))
            total += hist.get(key, 0) * N ** m
    if total % q.order:
        raise ArithmeticError("Burnside sum is not divisible by the group order")
    return total // q.order


def finite_quotient_twisted_classes(q: FiniteQuotient, e: EndoData) -> int:
    count, _ = twisted_classes_union_find(q, e)
    burnside = twisted_classes_burnside(q, e)
    if count != burnside:
        raise ArithmeticError(f"union-find count {count} != Burnside count {burnside}")
    return count


def conjugacy_classes(q: FiniteQuotient) -> int:
    """Ordinary conjugacy classes of G_N by direct orbit enumeration."""
    uf = UnionFind(q.order)
    gens = q.generators()
    for x in q.elements():
        ix = q.encode(x)
        for c in gens:
            uf.union(ix, q.encode(q.mul(q.mul(c, x), q.inv(c))))
    return uf.count


@dataclass(frozen=True)
class StabilizationRow:
    N: int
    count: int
    formula: object


def stabilization_report(G: TwoStepGroup, e: EndoData, Ns) -> list[StabilizationRow]:
    """Quotient counts next to the formula value; observational only."""
    R = reidemeister_number(G, e).total
    rows = []
    for N in Ns:
        q = FiniteQuotient(G, N)
        rows.append(StabilizationRow(N, finite_quotient_twisted_classes(q, e), R))
    return rows
