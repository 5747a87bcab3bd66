from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, prod

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nilspec.intlin import (
    INFINITY,
    DimensionError,
    ExtNat,
    IntMatrix,
    InvalidPolynomial,
    RankError,
    SkewError,
    adjugate_inverse,
    charpoly,
    count_real_roots,
    det,
    ext_abs,
    ext_prod,
    has_root_on_unit_circle,
    integer_kernel,
    rank,
    rational_kernel,
    skew_normal_form,
    smith_normal_form,
    solve_exact,
)


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        total += (-1) ** inv * prod(rows[i][perm[i]] for i in range(n))
    return total


def square(max_n=4, lo=-6, hi=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def rect(max_r=4, max_c=4, lo=-6, hi=6):
    return st.tuples(st.integers(1, max_r), st.integers(1, max_c)).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0])
    )


def determinantal_divisors(rows):
    """gcd of all k x k minors for k = 1..min(r, c)."""
    r, c = len(rows), len(rows[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for R in combinations(range(r), k):
            for C in combinations(range(c), k):
                g = gcd(g, leibniz_det([[rows[i][j] for j in C] for i in R]))
        out.append(g)
    return out


# --- IntMatrix ------------------------------------------------------------------

def test_matrix_basics():
    M = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert M.shape == (2, 3)
    assert M[1, 2] == 6
    assert M.T.shape == (3, 2)
    assert M.col(1) == (2, 5)
    assert (M @ M.T).tolist() == [[14, 32], [32, 77]]
    assert M.apply((1, 0, -1)) == (-2, -2)
    assert IntMatrix.from_cols([(1, 4), (2, 5), (3, 6)]) == M
    with pytest.raises(DimensionError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(DimensionError):
        M @ M


def test_block_diag():
    B = IntMatrix.block_diag(IntMatrix.from_rows([[1, 2], [3, 4]]), IntMatrix.from_rows([[5]]))
    assert B.tolist() == [[1, 2, 0], [3, 4, 0], [0, 0, 5]]


# --- det --------------------------------------------------------------------------

@pytest.mark.parametrize("rows, want", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
    ([[1, -1], [-1, 6]], 5),
    ([[-1, -1], [-1, 0]], -1),
])
def test_det_examples(rows, want):
    assert det(IntMatrix.from_rows(rows)) == want


def test_det_rejects_rectangular():
    with pytest.raises(DimensionError):
        det(IntMatrix.from_rows([[1, 2, 3]]))


def test_det_empty_is_one():
    assert det(IntMatrix.zeros(0, 0)) == 1


@given(square(5, -9, 9))
def test_det_matches_leibniz(rows):
    assert det(IntMatrix.from_rows(rows)) == leibniz_det(rows)


def test_det_big_entries_exact():
    rows = [[10 ** 30 + i * j for j in range(4)] for i in range(4)]
    rows[0][0] += 7
    assert det(IntMatrix.from_rows(rows)) == int(sympy.Matrix(rows).det())


# --- ExtNat -----------------------------------------------------------------------

def test_ext_abs():
    assert ext_abs(0) is INFINITY
    assert ext_abs(-5) == 5
    assert ext_abs(1) == 1
    assert str(INFINITY) == "inf"
    assert ExtNat(3) * INFINITY == INFINITY
    assert ext_prod([ext_abs(2), ext_abs(-3)]) == 6
    with pytest.raises(ValueError):
        ExtNat(0)


# --- SNF --------------------------------------------------------------------------

def test_snf_examples():
    assert smith_normal_form(IntMatrix.diag([2, 3])).divisors == (1, 6)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).divisors == (0, 0)


def _check_snf(rows):
    M = IntMatrix.from_rows(rows)
    res = smith_normal_form(M)
    D = res.U @ M @ res.V
    k = min(M.rows, M.cols)
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    for i in range(M.rows):
        for j in range(M.cols):
            assert D[i, j] == (res.divisors[i] if i == j else 0)
    ds = res.divisors
    assert len(ds) == k and all(d >= 0 for d in ds)
    for a, b in zip(ds, ds[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return res


@given(rect(4, 4, -8, 8))
def test_snf_certificate_and_chain(rows):
    _check_snf(rows)


@settings(max_examples=60)
@given(rect(3, 4, -8, 8))
def test_snf_matches_minor_gcds(rows):
    res = _check_snf(rows)
    dk = determinantal_divisors(rows)
    running = 1
    for k, g in enumerate(dk):
        running *= res.divisors[k]
        assert running == g


@given(square(4, -6, 6))
def test_snf_product_is_abs_det(rows):
    M = IntMatrix.from_rows(rows)
    d = det(M)
    assume(d != 0)
    assert prod(smith_normal_form(M).divisors) == abs(d)


def test_snf_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rows = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    theirs = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ours = smith_normal_form(IntMatrix.from_rows(rows)).divisors
    assert tuple(abs(int(theirs[i, i])) for i in range(3)) == ours


@given(rect(3, 5, -4, 4))
def test_integer_kernel_is_saturated_basis(rows):
    M = IntMatrix.from_rows(rows)
    K = integer_kernel(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert not any(M.apply(v))
    if K:
        # saturated: the basis extends to a unimodular matrix, so the maximal minors have gcd 1
        B = [list(v) for v in K]
        g = 0
        for cols in combinations(range(M.cols), len(B)):
            g = gcd(g, leibniz_det([[b[c] for c in cols] for b in B]))
        assert g == 1


# --- rank, kernel, solve -----------------------------------------------------------

@given(rect(4, 4, -3, 3))
def test_rank_and_rational_kernel(rows):
    M = IntMatrix.from_rows(rows)
    assert rank(M) == sympy.Matrix(rows).rank()
    K = rational_kernel(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert not any(M.apply(v))


def test_solve_exact_examples():
    C = IntMatrix.from_rows([[1]])
    assert solve_exact(C, IntMatrix.from_rows([[3]])).tolist() == [[3]]
    assert solve_exact(IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[3]])) is None
    # det of [[0,1],[1,-1]] is -1
    assert solve_exact(C, IntMatrix.from_rows([[-1]])).tolist() == [[-1]]


def test_solve_exact_inconsistent_and_rank():
    C = IntMatrix.from_rows([[1, 1]])
    assert solve_exact(C, IntMatrix.from_rows([[1, 2]])) is None
    with pytest.raises(RankError):
        solve_exact(IntMatrix.from_rows([[1, 1], [2, 2]]), IntMatrix.zeros(2, 2))


@given(rect(3, 3, -4, 4), st.integers(1, 3), st.integers(0, 2))
def test_solve_exact_recovers(rows, m_extra, seed):
    C = IntMatrix.from_rows(rows)
    assume(rank(C) == C.rows)
    D = IntMatrix.from_rows([[(i * 7 + j * 3 + seed) % 5 - 2 for j in range(C.rows)] for i in range(m_extra)])
    assert solve_exact(C, D @ C) == D


# --- adjugate inverse --------------------------------------------------------------

UNIMODULAR = [
    [[2, 1], [1, 1]],
    [[0, 1], [1, -1]],
    [[1, 2, 3], [0, 1, 4], [0, 0, -1]],
    [[0, 0, 1], [1, 0, -3], [0, 1, 2]],
]


@pytest.mark.parametrize("rows", UNIMODULAR)
def test_inverse_and_shift_symmetry(rows):
    A = IntMatrix.from_rows(rows)
    Ai = adjugate_inverse(A)
    assert A @ Ai == IntMatrix.identity(A.rows)
    I = IntMatrix.identity(A.rows)
    assert abs(det(I - A)) == abs(det(I - Ai))


def test_adjugate_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        adjugate_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))


# --- charpoly ------------------------------------------------------------------------

@pytest.mark.parametrize("rows, want", [
    ([[1, 0], [0, 1]], (1, -2, 1)),
    ([[0, 1], [1, -1]], (-1, 1, 1)),
    ([[0, -1], [1, 0]], (1, 0, 1)),
])
def test_charpoly_examples(rows, want):
    assert charpoly(IntMatrix.from_rows(rows)) == want


@given(square(5, -5, 5))
def test_charpoly_matches_sympy(rows):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(IntMatrix.from_rows(rows)) == tuple(int(c) for c in want)


def test_charpoly_rejects_rectangular():
    with pytest.raises(DimensionError):
        charpoly(IntMatrix.from_rows([[1, 2]]))


# --- unit circle --------------------------------------------------------------------

@pytest.mark.parametrize("p, want", [
    ((-1, 0, 1), True),
    ((1, -1, 1), True),
    ((1, 1), True),
    ((1, -3, 1), False),
    ((1, 0, 1), True),
    ((2, 1), False),
    ((0, 0, 1, -3, 1), False),
    ((1, 1, 1, 1, 1), True),
])
def test_unit_circle_examples(p, want):
    assert has_root_on_unit_circle(p) is want


def test_unit_circle_rejects_zero():
    with pytest.raises(InvalidPolynomial):
        has_root_on_unit_circle((0, 0))


def test_unit_circle_repeated_roots():
    # (x^2 + 1)^2 (x - 3)
    p = np.polynomial.polynomial.polymul((1, 0, 1), (1, 0, 1))
    p = np.polynomial.polynomial.polymul(p, (-3, 1))
    assert has_root_on_unit_circle(tuple(int(c) for c in p))


def float_unit_circle(p):
    """None when some root is too close to the circle to call."""
    roots = np.roots(list(reversed(p)))
    dist = np.abs(np.abs(roots) - 1.0) if len(roots) else np.array([1.0])
    if np.any((dist > 1e-6) & (dist < 1e-4)):
        return None
    return bool(np.any(dist <= 1e-6))


@settings(max_examples=300)
@given(st.lists(st.integers(-10, 10), min_size=2, max_size=7))
def test_unit_circle_matches_float(p):
    assume(p[-1] != 0)
    want = float_unit_circle(p)
    assume(want is not None)
    assert has_root_on_unit_circle(p) is want


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(1, 12))
def test_cyclotomic_multiples_detected(q, k):
    assume(any(q))
    # x^k - 1 times anything has roots on the circle
    cyc = (-1,) + (0,) * (k - 1) + (1,)
    p = np.polynomial.polynomial.polymul(cyc, q)
    assert has_root_on_unit_circle(tuple(int(c) for c in p))


def test_count_real_roots():
    # (x - 1)(x + 1)(x - 3) on (-2, 2]
    p = (3, -1, -3, 1)
    assert count_real_roots(p, Fraction(-2), Fraction(2)) == 2
    assert count_real_roots((1, 0, 1), -10, 10) == 0


# --- skew normal form ---------------------------------------------------------------

def _canonical(n, blocks):
    out = [[0] * n for _ in range(n)]
    for t, d in enumerate(blocks):
        out[2 * t][2 * t + 1] = d
        out[2 * t + 1][2 * t] = -d
    return out


def _check_skew(rows):
    M = IntMatrix.from_rows(rows)
    U, blocks = skew_normal_form(M)
    assert abs(det(U)) == 1
    assert (U @ M @ U.T).tolist() == _canonical(M.rows, blocks)
    assert all(d > 0 for d in blocks)
    for a, b in zip(blocks, blocks[1:]):
        assert b % a == 0
    return blocks


def test_skew_examples():
    assert _check_skew([[0, 1], [-1, 0]]) == (1,)
    assert _check_skew([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]) == (1,)
    assert _check_skew([[0, 6, 0, 0], [-6, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]]) == (2, 6)
    assert _check_skew([[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]) == (1, 6)


def test_skew_rejects_non_skew():
    with pytest.raises(SkewError):
        skew_normal_form(IntMatrix.from_rows([[1, 0], [0, 0]]))


def _skew_from_upper(n, vals):
    rows = [[0] * n for _ in range(n)]
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            rows[i][j], rows[j][i] = v, -v
    return rows


skew_strategy = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.integers(-6, 6), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)
    .map(lambda v: _skew_from_upper(n, v))
)


@given(skew_strategy)
def test_skew_certificate(rows):
    _check_skew(rows)


@given(skew_strategy, st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), max_size=8))
def test_skew_blocks_congruence_invariant(rows, ops):
    n = len(rows)
    W = IntMatrix.identity(n).tolist()
    for i, j, q in ops:
        i, j = i % n, j % n
        if i != j:
            W[j] = [a + q * b for a, b in zip(W[j], W[i])]
    W = IntMatrix.from_rows(W)
    M = IntMatrix.from_rows(rows)
    assert _check_skew(rows) == _check_skew((W @ M @ W.T).tolist())
