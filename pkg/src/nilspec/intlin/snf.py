"""Smith normal form and the skew-symmetric (symplectic) normal form over Z."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import IntMatrix, as_matrix


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V`` is diagonal with ``divisors`` on the diagonal."""

    U: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_row(a, src, dst, q):
    """row[dst] += q * row[src]"""
    if q:
        rs, rd = a[src], a[dst]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _add_col(a, src, dst, q):
    if q:
        for r in a:
            r[dst] += q * r[src]


def smith_normal_form(M) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Divisors are nonnegative, each divides the next, zeros trail.
    """
    M = as_matrix(M)
    r, c = M.rows, M.cols
    a = M.tolist()
    U = IntMatrix.identity(r).tolist()
    V = IntMatrix.identity(c).tolist()
    n = min(r, c)

    for t in range(n):
        while True:
            # pivot: smallest nonzero |entry| in the trailing block, row-major
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                _swap_rows(a, t, pi)
                _swap_rows(U, t, pi)
            if pj != t:
                _swap_cols(a, t, pj)
                _swap_cols(V, t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                q = a[i][t] // p
                _add_row(a, t, i, -q)
                _add_row(U, t, i, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, c):
                q = a[t][j] // p
                _add_col(a, t, j, -q)
                _add_col(V, t, j, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % p), None)
            if bad is None:
                break
            _add_row(a, bad[0], t, 1)
            _add_row(U, bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    divisors = tuple(a[i][i] for i in range(n))
    return SNFResult(IntMatrix.from_rows(U, cols=r), IntMatrix.from_rows(V, cols=c), divisors)


def integer_kernel(M) -> list[tuple[int, ...]]:
    """Z-basis of the lattice {v : M v = 0} (saturated)."""
    M = as_matrix(M)
    res = smith_normal_form(M)
    k = res.rank
    return [res.V.col(j) for j in range(k, M.cols)]


class SkewError(ValueError):
    pass


def skew_normal_form(M) -> tuple[IntMatrix, tuple[int, ...]]:
    """Congruence normal form of an integer skew-symmetric matrix.

    Returns ``(U, blocks)`` with ``U`` unimodular and ``U @ M @ U.T`` equal to
    ``[[0, d1], [-d1, 0]] + ... + [[0, dr], [-dr, 0]] + 0`` where
    ``d1 | d2 | ... | dr`` and every ``di > 0``.
    """
    M = as_matrix(M)
    n = M.rows
    if not M.is_square or any(M[i, j] != -M[j, i] for i in range(n) for j in range(n)):
        raise SkewError("matrix is not skew-symmetric")
    a = M.tolist()
    U = IntMatrix.identity(n).tolist()

    # every elementary op is applied as a -> E a E^T, U -> E U
    def swap(i, j):
        _swap_rows(a, i, j)
        _swap_cols(a, i, j)
        _swap_rows(U, i, j)

    def add(src, dst, q):
        _add_row(a, src, dst, q)
        _add_col(a, src, dst, q)
        _add_row(U, src, dst, q)

    def negate(i):
        a[i] = [-x for x in a[i]]
        for row in a:
            row[i] = -row[i]
        U[i] = [-x for x in U[i]]

    blocks = []
    t = 0
    while t + 1 < n:
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            # move the pivot to (t, t+1)
            if pi != t:
                swap(t, pi)
                if pj == t:
                    pj = pi
            if pj != t + 1:
                swap(t + 1, pj)
            if a[t][t + 1] < 0:
                negate(t + 1)
            p = a[t][t + 1]
            dirty = False
            for k in range(t + 2, n):
                # a[t][k] is cleared by subtracting multiples of basis vector t+1
                q = a[t][k] // p
                add(t + 1, k, -q)
                # a[t+1][k] = -a[k][t+1]; cleared using basis vector t
                q = a[t + 1][k] // p
                add(t, k, q)
                if a[t][k] or a[t + 1][k]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 2, n) for j in range(t + 2, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            # bring the offending entry into row t
            add(bad[0], t, 1)
        if best is None:
            break
        blocks.append(a[t][t + 1])
        t += 2
    return IntMatrix.from_rows(U, cols=n), tuple(blocks)
