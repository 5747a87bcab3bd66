"""Exact integer matrices, determinants and rational solves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit the requested operation."""


class RankError(ValueError):
    """Raised when a matrix is required to have full row rank and does not."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major.

    Entries are Python ints, so nothing ever overflows.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls.from_rows([list(c) for c in cols], cols=rows).T if cols else cls.zeros(rows, 0)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diag(cls, *blocks: IntMatrix) -> IntMatrix:
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        out = [[0] * c for _ in range(r)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, cols=c)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> IntMatrix:
        cols = list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


def det(M) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    M = as_matrix(M)
    if not M.is_square:
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    return det_rows(M.tolist())


def det_rows(a: list[list[int]]) -> int:
    """Bareiss on a square list of rows; the rows are overwritten."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M) -> int:
    M = as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    _, piv = _rref([[Fraction(x) for x in M.row(i)] for i in range(M.rows)])
    return len(piv)


def rational_kernel(M) -> list[tuple[int, ...]]:
    """Integer vectors spanning the rational right kernel of M (one per free column)."""
    M = as_matrix(M)
    if M.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(M.cols)) for j in range(M.cols)]
    rows, piv = _rref([[Fraction(x) for x in M.row(i)] for i in range(M.rows)])
    free = [c for c in range(M.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -rows[r][f]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        basis.append(tuple(int(x * den) for x in v))
    return basis


def solve_exact(C, M) -> IntMatrix | None:
    """Return the integer D with D @ C == M, or None when no such D exists.

    C must have full row rank, which makes a solution unique when it exists.
    """
    C, M = as_matrix(C), as_matrix(M)
    if M.cols != C.cols:
        raise DimensionError(f"right-hand side has {M.cols} columns, C has {C.cols}")
    m = C.rows
    if rank(C) != m:
        raise RankError("C does not have full row rank")
    if m == 0:
        return IntMatrix.zeros(M.rows, 0) if all(x == 0 for x in M.entries) else None
    # D C = M  <=>  C^T D^T = M^T; solve each row of D from the augmented system
    aug = [[Fraction(C[i, j]) for i in range(m)] + [Fraction(M[k, j]) for k in range(M.rows)]
           for j in range(C.cols)]
    rows, piv = _rref(aug)
    if any(p >= m for p in piv):
        return None
    # piv == range(m) by full rank
    out = []
    for k in range(M.rows):
        row = []
        for i in range(m):
            x = rows[i][m + k]
            if x.denominator != 1:
                return None
            row.append(int(x))
        out.append(row)
    D = IntMatrix.from_rows(out, cols=m)
    return D if D @ C == M else None


def adjugate_inverse(M) -> IntMatrix:
    """Inverse of a unimodular matrix."""
    M = as_matrix(M)
    d = det(M)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    n = M.rows
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = M.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            out[i][j] = (-1) ** (i + j) * det(minor) * d
    return IntMatrix.from_rows(out, cols=n)
