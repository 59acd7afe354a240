"""Gcd of the r x r minors of a matrix over Z[t^+-1], Z[x^+-1, a^+-1] or
Z[zeta][t^+-1].

Before enumerating minors the matrix is shrunk by unit pivots: if M has a
unit entry u, then after clearing its column the ideal of r-minors of M
equals the ideal of (r-1)-minors of the remaining block. Zero rows and
columns are dropped as well. The remaining minors are evaluated by
fraction-free (Bareiss) elimination and folded with gcd, stopping early at a
unit.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from .algebra import CycloLaurent, LaurentPoly, any_gcd, any_normalize, cyclo_exact_div, exact_div


def _ediv(f, g):
    if isinstance(f, CycloLaurent):
        return cyclo_exact_div(f, g)
    return exact_div(f, g)


def _zero_like(x):
    if isinstance(x, CycloLaurent):
        return CycloLaurent.zero(x.n, x.var)
    return LaurentPoly.zero(x.vars)


def _one_like(x):
    if isinstance(x, CycloLaurent):
        return CycloLaurent.const(x.n, 1, x.var)
    return LaurentPoly.one(x.vars)


def bareiss_det(M):
    """Determinant of a square matrix over an integral domain of Laurent
    polynomials; all intermediate divisions are exact."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix has no sample entry; handle n=0 by the caller")
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return _zero_like(A[0][0])
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk
                if aik and row_k[j]:
                    v = v - aik * row_k[j]
                if prev is not None and v:
                    v = _ediv(v, prev)
                row_i[j] = v
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def _units_reduce(M, r):
    """Peel unit pivots; returns (residual matrix, remaining minor size)."""
    A = [list(row) for row in M]
    while r > 0 and A and A[0]:
        best = None
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x and x.is_unit():
                    # Markowitz-style cost: fill-in from row/column occupancy
                    rc = sum(1 for y in row if y) - 1
                    cc = sum(1 for rr in A if rr[j]) - 1
                    cost = rc * cc
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        piv = A[i][j]
        inv = piv.unit_inverse()
        prow = A[i]
        for i2, row in enumerate(A):
            if i2 != i and row[j]:
                f = row[j] * inv
                A[i2] = [y - f * z if z else y for y, z in zip(row, prow)]
        A = [[x for jj, x in enumerate(row) if jj != j] for ii, row in enumerate(A) if ii != i]
        r -= 1
        A = _drop_zero(A)
    return _drop_zero(A), r


def _drop_zero(A):
    A = [row for row in A if any(row)]
    if not A:
        return A
    keep = [j for j in range(len(A[0])) if any(row[j] for row in A)]
    return [[row[j] for j in keep] for row in A]


def _threads():
    try:
        return max(1, int(os.environ.get("LENSALEX_THREADS", "1")))
    except ValueError:
        return 1


def minor_gcd(M, r, exhaustive=False, sample=None):
    """Normalized gcd of all r x r minors of M (list of rows).

    ``sample`` is any ring element, used to build 0 and 1 when M degenerates.
    With ``exhaustive`` every minor of M itself is evaluated (no pivot
    shortcuts); intended for cross-checks on small matrices.
    """
    if sample is None:
        sample = next((x for row in M for x in row), None)
    if sample is None:
        raise ValueError("cannot infer the coefficient ring of an empty matrix")
    zero, one = _zero_like(sample), _one_like(sample)
    if r <= 0:
        return one
    if exhaustive:
        A, rr = [list(row) for row in M], r
    else:
        A, rr = _units_reduce(M, r)
    if rr <= 0:
        return one
    if not A or rr > min(len(A), len(A[0])):
        return zero
    rows = list(combinations(range(len(A)), rr))
    cols = list(combinations(range(len(A[0])), rr))
    jobs = ((ri, ci) for ri in rows for ci in cols)

    def det(job):
        ri, ci = job
        return bareiss_det([[A[i][j] for j in ci] for i in ri])

    g = None
    nthreads = _threads()
    if nthreads > 1 and len(rows) * len(cols) > 8:
        with ThreadPoolExecutor(nthreads) as ex:
            for m in ex.map(det, list(jobs)):
                g = _fold(g, m)
        return any_normalize(g) if g is not None else zero
    for job in jobs:
        g = _fold(g, det(job))
        if g is not None and g and g.is_unit():
            return one
    return any_normalize(g) if g is not None else zero


def _fold(g, m):
    if not m:
        return g
    if g is None:
        return any_normalize(m)
    if g.is_unit():
        return g
    return any_gcd(g, m)
