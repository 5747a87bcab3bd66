"""Characteristic polynomials and exact root location on the unit circle.

Polynomials are coefficient tuples, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .matrix import DimensionError, IntMatrix, as_matrix


class InvalidPolynomial(ValueError):
    pass


def trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def charpoly(M) -> tuple[int, ...]:
    """Monic characteristic polynomial det(xI - M) via Faddeev-LeVerrier."""
    M = as_matrix(M)
    if not M.is_square:
        raise DimensionError(f"characteristic polynomial of non-square {M.shape} matrix")
    n = M.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    I = IntMatrix.identity(n)
    Mk = IntMatrix.zeros(n, n)
    for k in range(1, n + 1):
        Mk = M @ Mk + I.scale(coeffs[n - k + 1])
        AM = M @ Mk
        tr = sum(AM[i, i] for i in range(n))
        # exact: the trace is always divisible by k
        coeffs[n - k] = -tr // k
    return tuple(coeffs)


def _sub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    return trim(a - b for a, b in zip(p, q))


def _mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p, q):
    """Division with remainder over the rationals."""
    p = [Fraction(c) for c in trim(p)]
    q = [Fraction(c) for c in trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(p) >= len(q) and p:
        f = p[-1] / lead
        shift = len(p) - len(q)
        quot[shift] = f
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p = list(trim(p))
    return trim(quot), trim(p)


def monic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def gcd_poly(p, q):
    p, q = trim(p), trim(q)
    while q:
        _, r = divmod_poly(p, q)
        p, q = q, r
    return monic(p) if p else ()


def derivative(p):
    return trim(i * c for i, c in enumerate(p) if i)


def reciprocal(p):
    return trim(reversed(trim(p)))


def sturm_sequence(p):
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        _, r = divmod_poly(seq[-2], seq[-1])
        seq.append(tuple(-c for c in r))
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo, hi) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi]."""
    p = trim(p)
    if len(p) <= 1:
        return 0
    sq, _ = divmod_poly(p, gcd_poly(p, derivative(p)))
    seq = sturm_sequence(sq)
    return _sign_changes([evaluate(s, lo) for s in seq]) - _sign_changes([evaluate(s, hi) for s in seq])


def _palindromic_to_y(g):
    """h with g(x) = x^d h(x + 1/x), for palindromic g of degree 2d."""
    d = (len(g) - 1) // 2
    # x^k + x^-k as polynomials in y
    powers = [(Fraction(2),), (Fraction(0), Fraction(1))]
    for _ in range(2, d + 1):
        powers.append(_sub(_mul((0, 1), powers[-1]), powers[-2]))
    h: tuple = (g[d],)
    for k in range(1, d + 1):
        term = tuple(g[d + k] * c for c in powers[k])
        h = _sub(h, tuple(-c for c in term))
    return h


def has_root_on_unit_circle(p: Sequence[int]) -> bool:
    """True iff the integer polynomial p has a complex root of modulus 1."""
    p = trim(p)
    if not p:
        raise InvalidPolynomial("zero polynomial")
    if evaluate(p, 1) == 0 or evaluate(p, -1) == 0:
        return True
    # roots at 0 are off the circle and would break the reciprocal
    while p[0] == 0:
        p = p[1:]
    g = gcd_poly(p, reciprocal(p))
    if len(g) <= 1:
        return False
    # inversion-closed roots, none at +-1: monic g is palindromic of even degree
    if len(g) % 2 == 0 or any(g[i] != g[-1 - i] for i in range(len(g))):
        raise ArithmeticError("self-inversive factor is not palindromic")
    h = _palindromic_to_y(g)
    # h(+-2) != 0 because g(+-1) != 0
    return count_real_roots(h, Fraction(-2), Fraction(2)) > 0
