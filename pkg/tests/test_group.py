from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilspec.families import make_Gd, make_Gd_times_Z, make_I42, make_path7
from nilspec.group import (
    GroupElement,
    GroupError,
    NormalizationError,
    TwoStepGroup,
    center_basis,
    commutator,
    evaluate_word,
    inverse,
    invariants,
    multiply,
    power,
)

from .strategies import elements, group_with_elements, groups

H = make_Gd(1)


def E(a, u):
    return GroupElement(a, u)


# --- examples ---------------------------------------------------------------------

def test_multiply_examples():
    g = E((3, -2), (5,))
    assert multiply(H, H.identity(), g) == g
    assert multiply(H, H.x(1), H.x(0)) == E((1, 1), (-1,))
    assert multiply(H, H.x(0), H.x(1)) == E((1, 1), (0,))


def test_inverse_examples():
    assert inverse(H, H.identity()) == H.identity()
    # (1,1,0)^-1 = (-1,-1,-1) under this multiplication
    g = E((1, 1), (0,))
    assert inverse(H, g) == E((-1, -1), (-1,))
    assert multiply(H, g, inverse(H, g)).is_identity()
    assert inverse(H, E((0, 0), (7,))) == E((0, 0), (-7,))


def test_power_examples():
    g = E((1, 1), (0,))
    assert power(H, g, 0).is_identity()
    assert power(H, g, 1) == g
    assert power(H, g, 2) == E((2, 2), (-1,))


def test_commutator_examples():
    assert commutator(H, H.x(0), H.x(1)) == E((0, 0), (1,))
    g = E((2, -1), (3,))
    assert commutator(H, g, g).is_identity()
    P = make_path7()
    assert commutator(P, P.x(0), P.x(2)).is_identity()
    assert commutator(P, P.x(0), P.x(3)).is_identity()
    assert commutator(P, P.x(1), P.x(3)).is_identity()
    assert commutator(P, P.x(1), P.x(2)) == E((0,) * 4, (0, 1, 0))


def test_center_rank_examples():
    assert invariants(H).center_rank == 1
    assert invariants(make_Gd_times_Z(1)).center_rank == 2
    assert invariants(make_path7()).center_rank == 3
    assert len(center_basis(make_Gd_times_Z(1))) == 2


def test_invariants_examples():
    inv = invariants(make_I42(2, 3, (1, 1, 1)))
    assert (inv.delta, inv.lam, inv.class_n, inv.class_m, inv.hirsch) == (2, 3, 4, 2, 6)
    assert inv.divisors == (2, 6)
    inv = invariants(H)
    assert (inv.class_n, inv.class_m, inv.hirsch) == (2, 1, 3)
    assert inv.delta is None
    G = TwoStepGroup(3, 2, (((0, 1), (1, 0)),))
    inv = invariants(G)
    assert (inv.gamma2_rank, inv.class_n, inv.class_m) == (1, 4, 1)
    assert not G.is_normalized()
    with pytest.raises(NormalizationError):
        G.require_normalized()


def test_group_validation():
    with pytest.raises(GroupError):
        TwoStepGroup(2, 1, (((1, 0), (1,)),))
    with pytest.raises(GroupError):
        TwoStepGroup(2, 1, (((0, 1), (1, 2)),))
    with pytest.raises(GroupError):
        TwoStepGroup(2, 1, (((0, 1), (1,)), ((0, 1), (2,))))
    with pytest.raises(GroupError):
        multiply(H, E((1,), (0,)), H.identity())


def test_structure_matrix_column_order():
    G = TwoStepGroup(3, 1, (((1, 2), (5,)), ((0, 1), (7,))))
    assert G.structure_matrix().tolist() == [[7, 0, 5]]
    assert G.c(2, 1) == (-5,)


# --- a faithful matrix model of the Heisenberg group ---------------------------------

def heis_matrix(g: GroupElement):
    X1 = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=object)
    X2 = np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]], dtype=object)
    Z = np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1]], dtype=object)

    def mpow(M, k):
        out = np.identity(3, dtype=object)
        if k < 0:
            M = np.array([[1, -M[0][1], M[0][1] * M[1][2] - M[0][2]], [0, 1, -M[1][2]], [0, 0, 1]], dtype=object)
            k = -k
        for _ in range(k):
            out = out.dot(M)
        return out

    return mpow(X1, g.a[0]).dot(mpow(X2, g.a[1])).dot(mpow(Z, g.u[0]))


def test_matrix_model_relation():
    # the model satisfies [x1, x2] = x1^-1 x2^-1 x1 x2 = z
    c = heis_matrix(E((-1, 0), (0,))).dot(heis_matrix(E((0, -1), (0,)))).dot(
        heis_matrix(E((1, 0), (0,)))).dot(heis_matrix(E((0, 1), (0,))))
    assert (c == heis_matrix(E((0, 0), (1,)))).all()


@given(elements(H), elements(H))
def test_heisenberg_multiply_matches_matrices(g, h):
    assert (heis_matrix(multiply(H, g, h)) == heis_matrix(g).dot(heis_matrix(h))).all()


# --- properties ------------------------------------------------------------------------

@given(group_with_elements(3))
def test_group_axioms(data):
    G, g, h, k = data
    assert multiply(G, multiply(G, g, h), k) == multiply(G, g, multiply(G, h, k))
    assert multiply(G, G.identity(), g) == g == multiply(G, g, G.identity())
    assert multiply(G, g, inverse(G, g)).is_identity()
    assert multiply(G, inverse(G, g), g).is_identity()


@given(group_with_elements(1), st.integers(-6, 6))
def test_power_matches_repeated_multiply(data, k):
    G, g = data
    want = G.identity()
    step = g if k >= 0 else inverse(G, g)
    for _ in range(abs(k)):
        want = multiply(G, want, step)
    assert power(G, g, k) == want


@given(group_with_elements(3))
def test_commutator_definition_and_bilinearity(data):
    G, g1, g2, h = data
    direct = multiply(G, multiply(G, inverse(G, g1), inverse(G, h)), multiply(G, g1, h))
    assert commutator(G, g1, h) == direct
    lhs = commutator(G, multiply(G, g1, g2), h)
    rhs = multiply(G, commutator(G, g1, h), commutator(G, g2, h))
    assert lhs == rhs


@given(groups(), st.data())
def test_omega_bilinear(G, data):
    vec = st.tuples(*[st.integers(-9, 9) for _ in range(G.n)])
    a, b, c = data.draw(vec), data.draw(vec), data.draw(vec)
    k = data.draw(st.integers(-5, 5))
    ab = tuple(x + y for x, y in zip(a, b))
    assert G.omega(ab, c) == tuple(x + y for x, y in zip(G.omega(a, c), G.omega(b, c)))
    assert G.omega(c, ab) == tuple(x + y for x, y in zip(G.omega(c, a), G.omega(c, b)))
    ka = tuple(k * x for x in a)
    assert G.omega(ka, b) == tuple(k * x for x in G.omega(a, b))


@given(groups())
def test_generator_commutators_are_structure_constants(G):
    for i in range(G.n):
        for j in range(G.n):
            assert commutator(G, G.x(i), G.x(j)).u == G.c(i, j)


@settings(max_examples=50)
@given(groups())
def test_invariants_properties(G):
    inv = invariants(G)
    assert inv.hirsch == inv.class_n + inv.class_m == G.n + G.m
    for z in center_basis(G):
        for i in range(G.n):
            assert commutator(G, z, G.x(i)).is_identity()


def test_word_evaluation():
    w = [("x", 1, 1), ("x", 0, 1)]
    assert evaluate_word(H, w) == E((1, 1), (-1,))
    assert evaluate_word(H, [("z", 0, 3), ("x", 0, 2)]) == E((2, 0), (3,))


@pytest.mark.parametrize("delta, lam", [(1, 1), (2, 3), (3, 2)])
@pytest.mark.parametrize("phi", [(1, 0, 1), (0, 1, 0), (2, -1, 3)])
def test_i42_invariants(delta, lam, phi):
    inv = invariants(make_I42(delta, lam, phi))
    assert (inv.delta, inv.lam) == (delta, lam)
