"""Endomorphisms given by generator images, and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group import (
    GroupElement,
    GroupError,
    TwoStepGroup,
    multiply,
    power,
)
from .intlin import IntMatrix, adjugate_inverse, as_matrix, det, solve_exact


class MorphismError(ValueError):
    pass


class VerificationError(MorphismError):
    pass


@dataclass(frozen=True)
class EndoData:
    """Images of the generators.

    Column i of ``A`` (n x n) and ``B`` (m x n) are the x- and z-exponents of
    phi(x_i); column j of ``D`` (m x m) holds the z-exponents of phi(z_j).
    """

    A: IntMatrix
    B: IntMatrix
    D: IntMatrix
    verified: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("A", "B", "D"):
            object.__setattr__(self, name, as_matrix(getattr(self, name)))
        n, m = self.A.rows, self.D.rows
        if not self.A.is_square or not self.D.is_square or self.B.shape != (m, n):
            raise MorphismError(
                f"inconsistent shapes A{self.A.shape} B{self.B.shape} D{self.D.shape}"
            )

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.D.rows

    def image_x(self, i: int) -> GroupElement:
        return GroupElement(self.A.col(i), self.B.col(i))

    def image_z(self, j: int) -> GroupElement:
        return GroupElement((0,) * self.n, self.D.col(j))

    def mark(self, status: str) -> EndoData:
        return EndoData(self.A, self.B, self.D, verified=status)


def _check_shape(G: TwoStepGroup, e: EndoData):
    if (e.n, e.m) != (G.n, G.m):
        raise GroupError(f"endomorphism data for (n, m) = ({e.n}, {e.m}) on group with ({G.n}, {G.m})")


def commutator_image(G: TwoStepGroup, A) -> IntMatrix:
    """m x n(n-1)/2 matrix whose column (i, j) is beta(A e_i, A e_j)."""
    A = as_matrix(A)
    cols = [A.col(i) for i in range(G.n)]
    vals = [G.beta(cols[i], cols[j]) for i, j in G.pairs()]
    return IntMatrix.from_rows([[v[k] for v in vals] for k in range(G.m)], cols=len(vals))


def solve_induced_center_map(G: TwoStepGroup, A) -> IntMatrix | None:
    """The unique D with D C = M(A), or None if no endomorphism has x-part A."""
    G.require_normalized()
    A = as_matrix(A)
    if A.shape != (G.n, G.n):
        raise GroupError(f"x-part of shape {A.shape} for n = {G.n}")
    return solve_exact(G.structure_matrix(), commutator_image(G, A))


def identity_data(G: TwoStepGroup) -> EndoData:
    return EndoData(IntMatrix.identity(G.n), IntMatrix.zeros(G.m, G.n), IntMatrix.identity(G.m), verified="aut")


def from_matrices(G: TwoStepGroup, A, B=None, D=None) -> EndoData:
    """Build EndoData, solving for D when it is not given."""
    A = as_matrix(A)
    if B is None:
        B = IntMatrix.zeros(G.m, G.n)
    if D is None:
        D = solve_induced_center_map(G, A)
        if D is None:
            raise VerificationError("no induced map on the centre exists for this x-part")
    e = EndoData(A, B, D)
    _check_shape(G, e)
    return e


def from_images(G: TwoStepGroup, x_images: Sequence[GroupElement],
                z_images: Sequence[GroupElement] | None = None) -> EndoData:
    if len(x_images) != G.n:
        raise GroupError(f"{len(x_images)} x-images for n = {G.n}")
    A = IntMatrix.from_cols([g.a for g in x_images], rows=G.n)
    B = IntMatrix.from_cols([g.u for g in x_images], rows=G.m) if G.n else IntMatrix.zeros(G.m, 0)
    D = None
    if z_images is not None:
        if any(any(g.a) for g in z_images):
            raise MorphismError("a z-generator must map into the centre <z>")
        D = IntMatrix.from_cols([g.u for g in z_images], rows=G.m) if G.m else IntMatrix.zeros(0, 0)
    return from_matrices(G, A, B, D)


def check_endomorphism(G: TwoStepGroup, e: EndoData) -> bool:
    """True iff the generator images respect every defining commutator."""
    _check_shape(G, e)
    return e.D @ G.structure_matrix() == commutator_image(G, e.A)


def is_automorphism(G: TwoStepGroup, e: EndoData) -> bool:
    """Endomorphism whose induced map on the free abelian quotient is invertible.

    For torsion-free nilpotent groups that suffices; |det D| = 1 then follows.
    """
    G.require_normalized()
    return check_endomorphism(G, e) and det(e.A) in (1, -1)


def verify(G: TwoStepGroup, e: EndoData, *, automorphism: bool = False) -> EndoData:
    if automorphism:
        if not is_automorphism(G, e):
            raise VerificationError("data does not define an automorphism")
        if det(e.D) not in (1, -1):
            raise VerificationError(f"automorphism with non-unimodular centre map (det {det(e.D)})")
        return e.mark("aut")
    if not check_endomorphism(G, e):
        raise VerificationError("data does not define an endomorphism")
    return e.mark("endo")


def _require(G: TwoStepGroup, e: EndoData, level: str = "endo") -> EndoData:
    if e.verified == "aut" or e.verified == level:
        _check_shape(G, e)
        return e
    return verify(G, e, automorphism=(level == "aut"))


def apply(G: TwoStepGroup, e: EndoData, g: GroupElement) -> GroupElement:
    """phi(x^a z^u) = phi(x_1)^a_1 ... phi(x_n)^a_n phi(z)^u."""
    e = _require(G, e)
    G.check(g)
    out = G.identity()
    for i, k in enumerate(g.a):
        if k:
            out = multiply(G, out, power(G, e.image_x(i), k))
    zpart = e.D.apply(g.u) if G.m else ()
    return GroupElement(out.a, tuple(x + y for x, y in zip(out.u, zpart)))


def compose(G: TwoStepGroup, e1: EndoData, e2: EndoData) -> EndoData:
    """Data of g -> e1(e2(g))."""
    e1, e2 = _require(G, e1), _require(G, e2)
    images = [apply(G, e1, e2.image_x(i)) for i in range(G.n)]
    A = e1.A @ e2.A
    B = IntMatrix.from_cols([g.u for g in images], rows=G.m) if G.n else IntMatrix.zeros(G.m, 0)
    level = "aut" if e1.verified == e2.verified == "aut" else "endo"
    return EndoData(A, B, e1.D @ e2.D, verified=level)


def invert(G: TwoStepGroup, e: EndoData) -> EndoData:
    try:
        e = _require(G, e, "aut")
    except VerificationError as exc:
        raise MorphismError(f"cannot invert: {exc}") from None
    Ainv = adjugate_inverse(e.A)
    Dinv = adjugate_inverse(e.D) if G.m else e.D
    cols = []
    for i in range(G.n):
        w = apply(G, e, GroupElement(Ainv.col(i), (0,) * G.m)).u
        cols.append(tuple(-x for x in Dinv.apply(w)) if G.m else ())
    B = IntMatrix.from_cols(cols, rows=G.m) if G.n else IntMatrix.zeros(G.m, 0)
    return EndoData(Ainv, B, Dinv, verified="aut")
