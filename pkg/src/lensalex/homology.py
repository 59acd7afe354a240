"""Smith normal form over Z and first homology of link complements."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .diagram import component_flux, ensure_valid, flux
from .errors import LensAlexError
from .freegroup import Word


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(t for t in self.torsion if t != 1)
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion {tors} is not a divisibility chain")
        if any(t < 2 for t in tors):
            raise ValueError("torsion factors must be >= 2")
        object.__setattr__(self, "torsion", tors)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D diagonal, d1 | d2 | ..., U and V
    unimodular. Pivot: smallest nonzero absolute value."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // piv))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // piv))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility against the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(piv), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def int_det(M):
    """Exact determinant via fraction-free elimination."""
    n = len(M)
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
            for i in range(len(A))]


def group_from_relations(R, ngens):
    """Abelian group with ngens generators and relation rows R (one per relator)."""
    if not R:
        return AbelianGroup(ngens, ())
    D, _, _ = smith_normal_form(R)
    diag = [D[i][i] for i in range(min(len(D), ngens)) if D[i][i]]
    return AbelianGroup(ngens - len(diag), tuple(d for d in diag if d != 1))


def relation_matrix(pres):
    idx = {g: i for i, g in enumerate(pres.generators)}
    rows = []
    for w, _ in pres.relators:
        row = [0] * len(idx)
        for g, e in w.letters:
            row[idx[g]] += e
        rows.append(row)
    return rows


def homology_class(d, component):
    """[L_i] = q * f(L_i) mod p, in [0, p)."""
    return (d.q * component_flux(d)[component]) % d.p


def p_prime(d):
    r = len(d.components)
    tot = sum(homology_class(d, i) for i in range(r))
    pp = d.p // gcd(d.p, tot)
    if pp != flux(d).p_prime:
        raise LensAlexError(f"p' from classes ({pp}) disagrees with flux ({flux(d).p_prime})")
    return pp


def h1_closed_form(d):
    r = len(d.components)
    g = d.p
    for i in range(r):
        g = gcd(g, homology_class(d, i))
    return AbelianGroup(r, (g,) if g > 1 else ())


def h1_snf(d):
    from .presentation import lens_presentation
    pres = lens_presentation(d)
    return group_from_relations(relation_matrix(pres), len(pres.generators))


def h1_complement(d):
    """H_1 of the complement of L in L(p,q), by SNF and by the closed form."""
    ensure_valid(d)
    a = h1_snf(d)
    b = h1_closed_form(d)
    if a != b:
        raise LensAlexError(f"homology routes disagree: SNF {a} vs closed form {b}")
    return a
