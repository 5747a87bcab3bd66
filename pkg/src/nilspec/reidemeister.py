"""Reidemeister numbers of automorphisms and bounded spectrum searches."""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd

from .group import GroupElement, TwoStepGroup, multiply, pairing_matrix, power
from .intlin import (
    INFINITY,
    ExtNat,
    IntMatrix,
    adjugate_inverse,
    charpoly,
    det,
    det_rows,
    ext_abs,
    has_root_on_unit_circle,
    rational_kernel,
    smith_normal_form,
    solve_exact,
)
from .morphism import EndoData, MorphismError, VerificationError, apply, verify


@dataclass(frozen=True)
class ReidemeisterResult:
    r_phi1: ExtNat
    r_phi2: ExtNat

    @property
    def total(self) -> ExtNat:
        return self.r_phi1 * self.r_phi2


def _as_automorphism(G: TwoStepGroup, e: EndoData) -> EndoData:
    G.require_normalized()
    try:
        return verify(G, e, automorphism=True)
    except VerificationError as exc:
        raise MorphismError(str(exc)) from None


def _ext_det_shift(M: IntMatrix) -> ExtNat:
    """|det(I - M)|_inf"""
    return ext_abs(det(IntMatrix.identity(M.rows) - M))


def reidemeister_number(G: TwoStepGroup, e: EndoData) -> ReidemeisterResult:
    e = _as_automorphism(G, e)
    return ReidemeisterResult(_ext_det_shift(e.A), _ext_det_shift(e.D))


def is_infinite(G: TwoStepGroup, e: EndoData) -> bool:
    e = _as_automorphism(G, e)
    n, m = G.n, G.m
    return det(IntMatrix.identity(n) - e.A) == 0 or det(IntMatrix.identity(m) - e.D) == 0


def is_hyperbolic(G: TwoStepGroup, e: EndoData) -> bool:
    """No eigenvalue of the induced maps has modulus one."""
    e = _as_automorphism(G, e)
    return not has_root_on_unit_circle(charpoly(e.A)) and not has_root_on_unit_circle(charpoly(e.D))


def reidemeister_via_center_series(G: TwoStepGroup, e: EndoData) -> ExtNat:
    """R(phi) from the series G > Z(G) > 1 instead of the isolator series."""
    e = _as_automorphism(G, e)
    n, m = G.n, G.m
    P = pairing_matrix(G)
    snf = smith_normal_form(P)
    r = snf.rank
    V = snf.V
    Vinv = adjugate_inverse(V)
    T = Vinv @ e.A @ V
    # kernel directions are the last n - r columns of V and must be preserved
    if any(T[i, j] for i in range(r) for j in range(r, n)):
        raise ArithmeticError("automorphism does not preserve the centre")
    quotient = T.submatrix(range(r), range(r))
    K = T.submatrix(range(r, n), range(r, n))
    kernel = [V.col(j) for j in range(r, n)]

    # matrix on Z(G) in the basis z_1..z_m, x^{k_1}..x^{k_s}
    s = n - r
    cols = [list(e.D.col(j)) + [0] * s for j in range(m)]
    for i, k in enumerate(kernel):
        img = apply(G, e, GroupElement(k, (0,) * m))
        lift = G.identity()
        for l, kl in enumerate(kernel):
            lift = multiply(G, lift, power(G, GroupElement(kl, (0,) * m), K[l, i]))
        if lift.a != img.a:
            raise ArithmeticError("centre image is not spanned by the kernel basis")
        zcoords = [a - b for a, b in zip(img.u, lift.u)]
        cols.append(zcoords + [K[l, i] for l in range(s)])
    Z = IntMatrix.from_cols(cols, rows=m + s) if cols else IntMatrix.zeros(0, 0)
    return _ext_det_shift(quotient) * _ext_det_shift(Z)


# --- spectrum search -------------------------------------------------------

@dataclass
class SpectrumSample:
    height: int
    candidates_scanned: int = 0
    automorphisms_found: int = 0
    finite_values: list[int] = field(default_factory=list)
    witnesses: dict[int, EndoData] = field(default_factory=dict)
    truncated: bool = False


class _Searcher:
    """Depth-first column-by-column enumeration of x-parts A.

    A prefix of columns survives only if its maximal minors have gcd 1 (so it
    extends to a unimodular matrix) and its commutator values satisfy every
    linear relation among the structure-matrix columns of the pairs it spans.
    """

    def __init__(self, G: TwoStepGroup, height: int):
        self.G = G
        n, m = G.n, G.m
        self.n = n
        self.C = G.structure_matrix()
        pairs = self.pairs = G.pairs()
        self.npairs = len(pairs)
        self.pair_index = {p: k for k, p in enumerate(pairs)}
        # relations[j]: relations among columns of pairs inside the first j generators
        # that involve generator j - 1 (the others were tested at a shallower depth)
        self.relations = []
        for j in range(n + 1):
            inside = [k for k, (p, q) in enumerate(pairs) if q < j]
            rel = []
            if inside:
                sub = self.C.submatrix(range(m), inside)
                for w in rational_kernel(sub):
                    w = [(inside[t], c) for t, c in enumerate(w) if c]
                    if any(pairs[k][1] == j - 1 for k, _ in w):
                        rel.append(w)
            self.relations.append(rel)
        # cterm[i][j][k] = c(i, j)[k]
        self.cterm = [[G.c(i, j) for j in range(n)] for i in range(n)]
        rng = range(-height, height + 1)
        self.columns = [v for v in product(rng, repeat=n) if any(v)]
        self.minor_rows = {j: list(combinations(range(n), j)) for j in range(1, n + 1)}

    def _functional(self, a):
        """Rows of the linear map v -> beta(a, v)."""
        n, m, ct = self.n, self.G.m, self.cterm
        return [[sum(a[i] * ct[i][j][k] for i in range(n) if a[i]) for j in range(n)]
                for k in range(m)]

    def _extendable(self, cols) -> bool:
        j = len(cols)
        if j == self.n:
            return True  # the full determinant is tested at the leaf
        g = 0
        for rows in self.minor_rows[j]:
            g = gcd(g, det_rows([[cols[c][r] for c in range(j)] for r in rows]))
            if g == 1:
                return True
        return False

    def run(self, first_columns, limit=None):
        """Yield (A, D) for every automorphism whose first column is in first_columns."""
        G, n, m = self.G, self.n, self.G.m
        self.scanned = 0
        self.truncated = False
        cols: list = []
        funcs: list = []
        betas = [None] * self.npairs

        def rec():
            j = len(cols)
            if j == n:
                self.scanned += 1
                if det_rows([[cols[c][r] for c in range(n)] for r in range(n)]) not in (1, -1):
                    return
                M = IntMatrix(m, self.npairs, tuple(betas[k][t] for t in range(m) for k in range(self.npairs)))
                D = solve_exact(self.C, M)
                if D is not None:
                    yield IntMatrix.from_cols(cols, rows=n), D
                return
            pool = first_columns if j == 0 else self.columns
            idx = [self.pair_index[(p, j)] for p in range(j)]
            # the relations are linear in the new column v: row . v + const == 0
            constraints = []
            for w in self.relations[j + 1]:
                for t in range(m):
                    row = [0] * n
                    const = 0
                    for k, c in w:
                        p, q = self.pairs[k]
                        if q == j:
                            row = [x + c * y for x, y in zip(row, funcs[p][t])]
                        else:
                            const += c * betas[k][t]
                    if any(row):
                        constraints.append((row, const))
                    elif const:
                        return
            for v in pool:
                if limit is not None and self.scanned >= limit:
                    self.truncated = True
                    return
                if any(sum(x * y for x, y in zip(row, v)) + const for row, const in constraints):
                    continue
                cols.append(v)
                if self._extendable(cols):
                    for p in range(j):
                        betas[idx[p]] = tuple(sum(x * y for x, y in zip(row, v)) for row in funcs[p])
                    funcs.append(self._functional(v))
                    yield from rec()
                    funcs.pop()
                cols.pop()

        yield from rec()


def _search_chunk(args):
    G, height, firsts, limit = args
    s = _Searcher(G, height)
    hits = []
    for A, D in s.run(firsts, limit):
        hits.append((A, D))
    return hits, s.scanned, s.truncated


def spectrum_search(G: TwoStepGroup, height: int, limit: int | None = None,
                    threads: int = 1, progress: bool = False) -> SpectrumSample:
    """Enumerate automorphisms with x-part entries in [-height, height].

    B is irrelevant to R and set to zero; D is determined by A. Columns of A
    are enumerated in odometer order, first column slowest.
    """
    if height < 1:
        raise ValueError("height must be positive")
    G.require_normalized()
    searcher = _Searcher(G, height)
    firsts = searcher.columns
    if threads > 1 and limit is None:
        chunks = [(G, height, [v], None) for v in firsts]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_search_chunk, chunks))
    else:
        results = []
        remaining = limit
        for k, v in enumerate(firsts):
            res = _search_chunk((G, height, [v], remaining))
            results.append(res)
            if remaining is not None:
                remaining -= res[1]
                if res[2] or remaining <= 0:
                    break
            if progress and k % 10 == 0:
                print(f"spectrum: {k + 1}/{len(firsts)} first columns", file=sys.stderr)

    sample = SpectrumSample(height=height)
    seen: dict[int, EndoData] = {}
    for hits, scanned, truncated in results:
        sample.candidates_scanned += scanned
        sample.truncated = sample.truncated or truncated
        for A, D in hits:
            if det(D) not in (1, -1):
                raise ArithmeticError(f"automorphism with det D = {det(D)} found for A = {A}")
            sample.automorphisms_found += 1
            R = _ext_det_shift(A) * _ext_det_shift(D)
            if R.is_infinite or R.value in seen:
                continue
            seen[R.value] = EndoData(A, IntMatrix.zeros(G.m, G.n), D, verified="aut")
    if limit is not None and sample.candidates_scanned >= limit and len(results) < len(firsts):
        sample.truncated = True
    sample.finite_values = sorted(seen)
    sample.witnesses = {v: seen[v] for v in sample.finite_values}
    return sample


__all__ = [
    "INFINITY",
    "ReidemeisterResult",
    "SpectrumSample",
    "is_hyperbolic",
    "is_infinite",
    "reidemeister_number",
    "reidemeister_via_center_series",
    "spectrum_search",
]
