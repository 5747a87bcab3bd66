"""Normal forms: the I(3,2) reduction, I(n,1) classification and lambda-equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .group import GroupError, TwoStepGroup, invariants
from .intlin import IntMatrix, adjugate_inverse, det, skew_normal_form
from .families import make_I42


class CanonicalError(ValueError):
    pass


class NotInI32(CanonicalError):
    pass


class TemplateError(CanonicalError):
    """Group is class (4, 2) but not written in the G(delta, lambda, Phi) template."""


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """a X^2 + b X Y + c Y^2"""

    a: int
    b: int
    c: int

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def substitute(self, p: int, q: int, r: int, s: int) -> BinaryQuadraticForm:
        """Phi(pX + qY, rX + sY)."""
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __neg__(self):
        return BinaryQuadraticForm(-self.a, -self.b, -self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def _bqf(phi) -> BinaryQuadraticForm:
    return phi if isinstance(phi, BinaryQuadraticForm) else BinaryQuadraticForm(*phi)


# --- I(3,2) reduction -------------------------------------------------------

@dataclass(frozen=True)
class I32Intermediate:
    """[x1,x2] = z1^alpha z2^beta, [x1,x3] = z2^t13, [x2,x3] = z2^t23."""

    alpha: int
    beta: int
    t13: int
    t23: int

    def group(self) -> TwoStepGroup:
        return TwoStepGroup(3, 2, (
            ((0, 1), (self.alpha, self.beta)),
            ((0, 2), (0, self.t13)),
            ((1, 2), (0, self.t23)),
        ))


@dataclass(frozen=True)
class GeneratorChange:
    """Column i of X (Z) gives the new x_i (z_i) in terms of the old generators.

    Columns of X are read modulo the centre, which is all commutators see.
    """

    X: IntMatrix
    Z: IntMatrix
    label: str = ""


def _x_change(cols, label):
    return GeneratorChange(IntMatrix.from_cols(cols, rows=3), IntMatrix.identity(2), label)


def reduce_i32(p: I32Intermediate) -> tuple[int, int, int, list[GeneratorChange]]:
    """Bring an intermediate I(3,2) presentation to [x1,x2]=z1^a z2^b, [x1,x3]=z2^g.

    Euclid's algorithm on (t13, t23) with remainders in [0, divisor), then the
    swap x1' = x2, x2' = x1^-1 when the survivor sits on [x2, x3]; gamma is made
    positive at the end by inverting z2.
    """
    alpha, beta, t13, t23 = p.alpha, p.beta, p.t13, p.t23
    if alpha == 0:
        raise CanonicalError("alpha must be nonzero")
    if t13 == 0 and t23 == 0:
        raise NotInI32("t13 = t23 = 0: the group is not in I(3,2)")
    trail: list[GeneratorChange] = []

    def invert_z2(label):
        nonlocal beta, t13, t23
        beta, t13, t23 = -beta, -t13, -t23
        trail.append(GeneratorChange(IntMatrix.identity(3), IntMatrix.diag([1, -1]), label))

    if t13 < 0:
        invert_z2("z2' = z2^-1")
    while t13 != 0 and t23 != 0:
        # x2' = x1^k x2 turns t23 into t23 + k t13 = t23 mod t13
        k = -(t23 // t13)
        t23 = t23 % t13
        trail.append(_x_change([(1, 0, 0), (k, 1, 0), (0, 0, 1)], f"x2' = x1^{k} x2"))
        if t23 == 0:
            break
        # x1' = x2^l x1 turns t13 into t13 + l t23 = t13 mod t23
        l = -(t13 // t23)
        t13 = t13 % t23
        trail.append(_x_change([(1, l, 0), (0, 1, 0), (0, 0, 1)], f"x1' = x2^{l} x1"))
    if t13 == 0:
        # [x2, x1^-1] = [x1, x2], so alpha and beta survive the swap
        trail.append(_x_change([(0, 1, 0), (-1, 0, 0), (0, 0, 1)], "x1' = x2, x2' = x1^-1"))
        t13, t23 = t23, 0
    if t13 < 0:
        invert_z2("z2' = z2^-1")
    return alpha, beta, t13, trail


def compose_trail(trail: list[GeneratorChange], n: int = 3, m: int = 2) -> GeneratorChange:
    X, Z = IntMatrix.identity(n), IntMatrix.identity(m)
    for g in trail:
        X, Z = X @ g.X, Z @ g.Z
    return GeneratorChange(X, Z, "composite")


def change_generators(G: TwoStepGroup, change: GeneratorChange) -> TwoStepGroup:
    """Presentation of G in the new generators described by ``change``."""
    X, Z = change.X, change.Z
    if det(X) not in (1, -1) or det(Z) not in (1, -1):
        raise CanonicalError("generator change is not unimodular")
    Zinv = adjugate_inverse(Z)
    cols = [X.col(i) for i in range(G.n)]
    comm = []
    for i, j in G.pairs():
        c = Zinv.apply(G.beta(cols[i], cols[j]))
        if any(c):
            comm.append(((i, j), c))
    return TwoStepGroup(G.n, G.m, tuple(comm))


# --- I(n,1) -----------------------------------------------------------------

def classify_in1(G: TwoStepGroup) -> tuple[tuple[int, ...], int]:
    """(d_1 | ... | d_r, free rank) with G = G(d_1, ..., d_r) x Z^free."""
    inv = invariants(G)
    if inv.gamma2_rank != 1:
        raise CanonicalError(f"gamma_2 has rank {inv.gamma2_rank}, expected 1")
    # all commutator vectors are multiples of one primitive w
    cols = [G.c(i, j) for i, j in G.pairs()]
    v = next(c for c in cols if any(c))
    g = 0
    for x in v:
        g = gcd(g, x)
    w = tuple(x // g for x in v)
    k = next(t for t, x in enumerate(w) if x)

    def scalar(c):
        return c[k] // w[k]

    S = IntMatrix.from_rows([[scalar(G.c(i, j)) for j in range(G.n)] for i in range(G.n)])
    _, blocks = skew_normal_form(S)
    free = G.n - 2 * len(blocks) + (G.m - 1)
    return blocks, free


# --- binary quadratic forms -------------------------------------------------

def psi_k(phi, lam: int, k: int) -> BinaryQuadraticForm:
    """Phi((k lam + 1) X + k Y, lam X + Y), in expanded form."""
    a, b, c = _bqf(phi)
    kl1 = k * lam + 1
    return BinaryQuadraticForm(
        a * kl1 ** 2 + b * lam * kl1 + c * lam * lam,
        2 * a * k * kl1 + b * (2 * k * lam + 1) + 2 * c * lam,
        k * (a * k + b) + c,
    )


def choose_k0(phi) -> int:
    """Smallest |k| (positive first) with k (a k + b) != 0, for Phi with c = 0."""
    a, b, c = _bqf(phi)
    if c != 0:
        raise CanonicalError("choose_k0 expects Phi(0, 1) = 0")
    if a == 0 and b == 0:
        raise CanonicalError("Phi = 0 is handled by the product decomposition")
    k = 1
    while True:
        for cand in (k, -k):
            if cand * (a * cand + b) != 0:
                return cand
        k += 1


@dataclass(frozen=True)
class LambdaWitness:
    """Psi(X, Y) = sign * Phi(p X + q Y, lam r X + s Y)."""

    p: int
    q: int
    r: int
    s: int
    lam: int
    sign: int

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.p, self.q), (self.lam * self.r, self.s))

    def apply(self, phi) -> BinaryQuadraticForm:
        out = _bqf(phi).substitute(self.p, self.q, self.lam * self.r, self.s)
        return out if self.sign > 0 else -out


def _value_order(s: int) -> list[int]:
    out = [0]
    for t in range(1, s + 1):
        out += [t, -t]
    return out


def _shell(s: int, lam: int) -> Iterator[tuple[int, int, int, int]]:
    """Matrices with max(|p|,|q|,|r|,|s|) == s; det +1 before det -1."""
    vals = _value_order(s)
    for want in (1, -1):
        for p in vals:
            for q in vals:
                for r in vals:
                    for t in vals:
                        if max(abs(p), abs(q), abs(r), abs(t)) != s:
                            continue
                        if p * t - q * lam * r == want:
                            yield p, q, r, t


def bqf_lambda_equivalent(phi, psi, lam: int, bound: int) -> LambdaWitness | None:
    """Search for a lambda-equivalence witness with entries bounded by ``bound``.

    None means only "not found within bound", never inequivalence.
    """
    if lam == 0:
        raise CanonicalError("lambda must be nonzero")
    if bound < 1:
        raise CanonicalError("bound must be positive")
    phi, psi = _bqf(phi), _bqf(psi)
    for sign in (1, -1):
        w = LambdaWitness(1, 0, 0, 1, lam, sign)
        if w.apply(phi) == psi:
            return w
    for s in range(1, bound + 1):
        for p, q, r, t in _shell(s, lam):
            img = phi.substitute(p, q, lam * r, t)
            if img == psi:
                return LambdaWitness(p, q, r, t, lam, 1)
            if -img == psi:
                return LambdaWitness(p, q, r, t, lam, -1)
    return None


def invert_witness(w: LambdaWitness) -> LambdaWitness:
    """Witness for the reverse direction; the lower-left entry stays divisible by lambda."""
    d = w.p * w.s - w.q * w.lam * w.r
    # inverse of [[p, q], [lam r, s]] is d * [[s, -q], [-lam r, p]]
    return LambdaWitness(d * w.s, -d * w.q, -d * w.r, d * w.p, w.lam, w.sign)


def recover_form(G: TwoStepGroup) -> tuple[int, int, BinaryQuadraticForm]:
    """(delta, lambda, Phi) for a group written exactly in the G(delta, lambda, Phi) template."""
    if (G.n, G.m) != (4, 2):
        raise CanonicalError(f"expected n = 4, m = 2, got ({G.n}, {G.m})")
    inv = invariants(G)
    if inv.class_m != 2:
        raise CanonicalError("structure matrix does not have rank 2")
    delta = G.c(0, 3)[0]
    dl = G.c(0, 2)[1]
    if delta < 1 or dl < 1 or dl % delta:
        raise TemplateError("group is not in G(delta, lambda, Phi) template form")
    lam = dl // delta
    c23, c24 = G.c(1, 2), G.c(1, 3)
    if c23[0] % delta or c23[1] % dl or c24[1] % dl:
        raise TemplateError("group is not in G(delta, lambda, Phi) template form")
    phi = BinaryQuadraticForm(c23[0] // delta, c23[1] // dl, -c24[1] // dl)
    if make_I42(delta, lam, tuple(phi)) != G:
        raise TemplateError("group is not in G(delta, lambda, Phi) template form")
    if (inv.delta, inv.lam) != (delta, lam):
        raise TemplateError("template parameters disagree with the Smith invariants")
    return delta, lam, phi


@dataclass(frozen=True)
class IsomorphismVerdict:
    isomorphic: bool | None  # None: undecided within the search bound
    reason: str
    witness: LambdaWitness | None = None


def i42_isomorphic(G: TwoStepGroup, H: TwoStepGroup, bound: int) -> IsomorphismVerdict:
    for K in (G, H):
        inv = invariants(K)
        if (inv.class_n, inv.class_m) != (4, 2):
            raise CanonicalError(f"group of class ({inv.class_n}, {inv.class_m}), expected (4, 2)")
    dG, lG, phi = recover_form(G)
    dH, lH, psi = recover_form(H)
    if (dG, lG) != (dH, lH):
        return IsomorphismVerdict(False, f"invariants differ: (delta, lambda) = ({dG}, {lG}) vs ({dH}, {lH})")
    w = bqf_lambda_equivalent(phi, psi, lG, bound)
    if w is None:
        return IsomorphismVerdict(None, f"no lambda-equivalence found within bound {bound}")
    return IsomorphismVerdict(True, "forms are lambda-equivalent", w)


__all__ = [
    "BinaryQuadraticForm", "CanonicalError", "GeneratorChange", "GroupError", "I32Intermediate",
    "IsomorphismVerdict", "LambdaWitness", "NotInI32", "TemplateError", "bqf_lambda_equivalent",
    "change_generators", "choose_k0", "classify_in1", "compose_trail", "i42_isomorphic",
    "invert_witness", "psi_k", "recover_form", "reduce_i32",
]
