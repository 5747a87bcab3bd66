"""The explicit groups and automorphisms of the classification.

Automorphisms are written as image words and evaluated in normal form, so
the z-corrections in B come from collection rather than being typed in.
"""

from __future__ import annotations

from typing import Sequence

from .group import GroupError, TwoStepGroup, evaluate_word
from .intlin import IntMatrix
from .morphism import EndoData, from_images, verify


class ParameterError(ValueError):
    pass


def _check_chain(ds: Sequence[int]):
    if not ds:
        raise ParameterError("need at least one d")
    if any(d < 0 for d in ds):
        raise ParameterError("the d_i must be nonnegative")
    if ds[0] == 0:
        raise ParameterError("d_1 must be nonzero")
    for a, b in zip(ds, ds[1:]):
        if (a == 0 and b != 0) or (a != 0 and b % a):
            raise ParameterError(f"divisibility chain broken: {a} does not divide {b}")


def make_Gd(*ds: int) -> TwoStepGroup:
    """G(d_1, ..., d_r): generators x_1..x_r, y_1..y_r, [x_i, y_i] = z^{d_i}."""
    _check_chain(ds)
    r = len(ds)
    return TwoStepGroup(2 * r, 1, tuple(((i, r + i), (d,)) for i, d in enumerate(ds)))


def make_Gd_times_Z(*ds: int) -> TwoStepGroup:
    """G(d_1, ..., d_r) x Z with the free generator u placed after the y's."""
    _check_chain(ds)
    r = len(ds)
    return TwoStepGroup(2 * r + 1, 1, tuple(((i, r + i), (d,)) for i, d in enumerate(ds)))


def make_abelian(n: int) -> TwoStepGroup:
    return TwoStepGroup(n, 0, ())


def make_I32(alpha: int, beta: int, gamma: int) -> TwoStepGroup:
    """[x_1, x_2] = z_1^alpha z_2^beta, [x_1, x_3] = z_2^gamma."""
    if alpha == 0 or gamma == 0:
        raise ParameterError("alpha and gamma must be nonzero")
    return TwoStepGroup(3, 2, (((0, 1), (alpha, beta)), ((0, 2), (0, gamma))))


def make_I42(delta: int, lam: int, phi: Sequence[int]) -> TwoStepGroup:
    """G(delta, lambda, Phi) for Phi = aX^2 + bXY + cY^2."""
    if delta < 1 or lam < 1:
        raise ParameterError("delta and lambda must be positive")
    a, b, c = phi
    dl = delta * lam
    return TwoStepGroup(4, 2, (
        ((0, 2), (0, dl)),
        ((0, 3), (delta, 0)),
        ((1, 2), (a * delta, b * dl)),
        ((1, 3), (0, -c * dl)),
    ))


def make_path7() -> TwoStepGroup:
    """Path graph on four vertices: [x_1,x_2]=z_1, [x_2,x_3]=z_2, [x_3,x_4]=z_3."""
    return TwoStepGroup(4, 3, (((0, 1), (1, 0, 0)), ((1, 2), (0, 1, 0)), ((2, 3), (0, 0, 1))))


def _aut_from_words(G: TwoStepGroup, x_words, z_words) -> EndoData:
    x_images = [evaluate_word(G, w) for w in x_words]
    z_images = [evaluate_word(G, w) for w in z_words]
    return verify(G, from_images(G, x_images, z_images), automorphism=True)


def _positive_ks(ks: Sequence[int], r: int):
    if len(ks) != r:
        raise ParameterError(f"expected {r} values of k, got {len(ks)}")
    if any(k < 1 for k in ks):
        raise ParameterError("the k_i must be positive")


def aut_even(G: TwoStepGroup, ks: Sequence[int]) -> EndoData:
    """x_i -> y_i, y_i -> x_i y_i^{-k_i}, z -> z^{-1}; R = 2 k_1 ... k_r."""
    if G.n % 2 or G.m != 1:
        raise ParameterError("expected a group G(d_1, ..., d_r)")
    r = G.n // 2
    _positive_ks(ks, r)
    x_words = [[("x", r + i, 1)] for i in range(r)]
    x_words += [[("x", i, 1), ("x", r + i, -ks[i])] for i in range(r)]
    return _aut_from_words(G, x_words, [[("z", 0, -1)]])


def aut_odd(G: TwoStepGroup, ks: Sequence[int]) -> EndoData:
    """As aut_even plus u -> u^{-1}; R = 4 k_1 ... k_r."""
    if G.n % 2 == 0 or G.m != 1:
        raise ParameterError("expected a group G(d_1, ..., d_r) x Z")
    r = G.n // 2
    _positive_ks(ks, r)
    if G.c(r - 1, 2 * r - 1) == (0,):
        raise ParameterError("d_r = 0: the group splits as G(d_1..d_{r-1}) x Z^3")
    x_words = [[("x", r + i, 1)] for i in range(r)]
    x_words += [[("x", i, 1), ("x", r + i, -ks[i])] for i in range(r)]
    x_words.append([("x", 2 * r, -1)])
    return _aut_from_words(G, x_words, [[("z", 0, -1)]])


def aut_i32(G: TwoStepGroup, alpha: int, beta: int, gamma: int, k: int, l: int) -> EndoData:
    """Finite-R automorphism of the I(3,2) group with parameters (alpha, beta, gamma).

    R = 2 |alpha gamma^2 k l (4 + alpha gamma^2 k l)|.
    """
    if k == 0 or l == 0:
        raise ParameterError("k and l must be nonzero")
    t = alpha * gamma * gamma * k * l
    if 4 + t == 0:
        raise ParameterError("4 + alpha gamma^2 k l must be nonzero")
    if G != make_I32(alpha, beta, gamma):
        raise ParameterError("group does not match the given (alpha, beta, gamma)")
    x_words = [
        [("x", 0, -1)],
        [("x", 1, -beta * gamma * l - t - 1), ("x", 2, beta * beta * l + alpha * beta * gamma * k * l - alpha * k)],
        [("x", 1, -gamma * gamma * l), ("x", 2, beta * gamma * l - 1)],
    ]
    z_words = [
        [("z", 0, t + 1), ("z", 1, gamma * k)],
        [("z", 0, alpha * gamma * l), ("z", 1, 1)],
    ]
    return _aut_from_words(G, x_words, z_words)


def aut_i42(G: TwoStepGroup, delta: int, lam: int, phi: Sequence[int]) -> EndoData:
    """Finite-R automorphism of G(delta, lambda, Phi) when Phi(0, 1) = c != 0; R = 64 c^2."""
    a, b, c = phi
    if c == 0:
        raise ParameterError("c = 0: replace Phi by psi_k(Phi, lambda, k0) first")
    if G != make_I42(delta, lam, phi):
        raise ParameterError("group does not match G(delta, lambda, Phi)")
    x_words = [
        [("x", 0, -1 - 4 * c), ("x", 3, 2)],
        [("x", 1, -1 - 4 * c), ("x", 2, -2 * c)],
        [("x", 1, 2), ("x", 2, 1)],
        [("x", 0, -2 * c), ("x", 3, 1)],
    ]
    return _aut_from_words(G, x_words, [[("z", 0, -1)], [("z", 1, -1)]])


def direct_product(G1: TwoStepGroup, G2: TwoStepGroup) -> TwoStepGroup:
    """Generators ordered x(G1), x(G2), z(G1), z(G2)."""
    comm = []
    for (i, j), c in G1.comm:
        comm.append(((i, j), tuple(c) + (0,) * G2.m))
    for (i, j), c in G2.comm:
        comm.append(((G1.n + i, G1.n + j), (0,) * G1.m + tuple(c)))
    return TwoStepGroup(G1.n + G2.n, G1.m + G2.m, tuple(comm))


def product_aut(e1: EndoData, e2: EndoData) -> EndoData:
    if e1.B.shape != (e1.m, e1.n) or e2.B.shape != (e2.m, e2.n):
        raise GroupError("malformed endomorphism data")
    return EndoData(
        IntMatrix.block_diag(e1.A, e2.A),
        IntMatrix.block_diag(e1.B, e2.B),
        IntMatrix.block_diag(e1.D, e2.D),
    )


def abelian_aut_with_R(n: int, k: int) -> EndoData:
    """Automorphism of Z^n (n >= 2) with |det(I - A)| = k >= 1, via a companion matrix."""
    if n < 2 or k < 1:
        raise ParameterError("need n >= 2 and k >= 1")
    # companion matrix of x^n + (k - 2) x^{n-1} + 1: p(1) = k, p(0) = 1
    coeffs = [0] * n
    coeffs[0] = 1
    coeffs[n - 1] = k - 2
    A = [[0] * n for _ in range(n)]
    for i in range(1, n):
        A[i][i - 1] = 1
    for i in range(n):
        A[i][n - 1] = -coeffs[i]
    return EndoData(IntMatrix.from_rows(A), IntMatrix.zeros(0, n), IntMatrix.zeros(0, 0))


def degenerate_i42(delta: int, lam: int, k: int = 1, l: int = 1) -> tuple[TwoStepGroup, EndoData]:
    """G(delta, lambda, 0) as (I(3,2) group) x Z with automorphism psi' x (-Id).

    The I(3,2) factor is <x_1, x_4, x_3> with [x_1, x_4] = z_1^delta and
    [x_1, x_3] = z_2^{delta lambda}, i.e. make_I32(delta, 0, delta lambda);
    the Z factor is x_2.
    """
    g = delta * lam
    G1 = make_I32(delta, 0, g)
    e1 = aut_i32(G1, delta, 0, g, k, l)
    Z = make_abelian(1)
    eZ = EndoData(IntMatrix.from_rows([[-1]]), IntMatrix.zeros(0, 1), IntMatrix.zeros(0, 0))
    G = direct_product(G1, Z)
    return G, verify(G, product_aut(e1, eZ), automorphism=True)
