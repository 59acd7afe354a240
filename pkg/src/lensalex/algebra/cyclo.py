"""Cyclotomic integers Z[zeta_n] and Laurent polynomials over them.

Elements are coordinate vectors in the power basis 1, z, ..., z^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial. Gcds are taken over the
field Q(zeta_n) and then scaled back to integral coordinates.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

from ..errors import NotDivisible, VariableMismatch
from .laurent import LaurentPoly
from .polygcd import dense_divmod, dense_mul


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, r = dense_divmod(num, cyclotomic_poly(d))
            assert not r
    return tuple(num)


def euler_phi(n):
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n):
    """Reduced coordinates of z^k for 0 <= k < 2*phi(n) and for k < n."""
    phi_coeffs = cyclotomic_poly(n)
    m = len(phi_coeffs) - 1
    top = max(2 * m, n + 1)
    table = []
    for k in range(top):
        if k < m:
            v = [0] * m
            v[k] = 1
        else:
            prev = table[k - 1]
            # multiply previous by z: shift, then reduce the z^m term
            v = [0] + prev[:-1]
            carry = prev[-1]
            if carry:
                for i in range(m):
                    v[i] -= carry * phi_coeffs[i]
        table.append(v)
    return [tuple(v) for v in table]


def _reduce(coeffs, n):
    """Reduce a dense list (any length) modulo Phi_n; works for ints or Fractions."""
    table = _power_table(n)
    m = euler_phi(n)
    if len(coeffs) <= m:
        return tuple(coeffs) + (0,) * (m - len(coeffs))
    out = list(coeffs[:m])
    while len(out) < m:
        out.append(0)
    if len(coeffs) > len(table):
        # fold long inputs using z^n = 1 first
        folded = [0] * n
        for i, c in enumerate(coeffs):
            folded[i % n] += c
        return _reduce(folded, n)
    for k in range(m, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k]
            for i in range(m):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class CycloElem:
    """Element of Z[zeta_n] (or Q(zeta_n) when coordinates are Fractions)."""

    __slots__ = ("n", "coords")

    def __init__(self, n, coords):
        self.n = n
        self.coords = _reduce(list(coords), n)

    @classmethod
    def _raw(cls, n, coords):
        obj = cls.__new__(cls)
        obj.n = n
        obj.coords = coords
        return obj

    @classmethod
    def from_int(cls, n, c):
        m = euler_phi(n)
        return cls._raw(n, (c,) + (0,) * (m - 1))

    @classmethod
    def zeta(cls, n, j=1):
        j %= n
        return cls._raw(n, _power_table(n)[j])

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(self.coords)

    def to_int(self):
        if any(self.coords[1:]):
            raise ValueError("not a rational integer")
        return self.coords[0]

    def _coerce(self, other):
        if isinstance(other, int):
            return CycloElem.from_int(self.n, other)
        if isinstance(other, CycloElem):
            if other.n != self.n:
                raise VariableMismatch(f"orders {self.n} and {other.n}")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem._raw(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem._raw(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloElem._raw(self.n, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem._raw(self.n, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.coords) == 1:
            return CycloElem._raw(self.n, (self.coords[0] * other.coords[0],))
        return CycloElem._raw(self.n, _reduce(dense_mul(list(self.coords), list(other.coords)), self.n))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElem.from_int(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coords[0] == other and not any(self.coords[1:])
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self):
        return hash((self.n, self.coords))

    def is_integral(self):
        return all(isinstance(c, int) or c.denominator == 1 for c in self.coords)

    def integral(self):
        return CycloElem._raw(self.n, tuple(int(c) for c in self.coords))

    def to_fraction(self):
        return CycloElem._raw(self.n, tuple(Fraction(c) for c in self.coords))

    def mult_matrix(self):
        """Matrix of multiplication by self in the power basis (columns = images of z^j)."""
        m = len(self.coords)
        cols = []
        for j in range(m):
            basis = CycloElem._raw(self.n, _power_table(self.n)[j])
            cols.append((self * basis).coords)
        return [[cols[j][i] for j in range(m)] for i in range(m)]

    def inverse(self):
        """Inverse in Q(zeta_n), by solving the multiplication system."""
        if self.is_zero():
            raise ZeroDivisionError("zero cyclotomic element")
        m = len(self.coords)
        if m == 1:
            c = self.coords[0]
            return CycloElem._raw(self.n, (Fraction(1, 1) / c,))
        mat = self.mult_matrix()
        aug = [[Fraction(x) for x in row] + [Fraction(1 if i == 0 else 0)] for i, row in enumerate(mat)]
        for col in range(m):
            piv = next(r for r in range(col, m) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(m):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return CycloElem._raw(self.n, tuple(aug[i][m] for i in range(m)))

    def unit_index(self):
        """Return (sign, j) if self == sign*zeta^j, else None."""
        return _root_lookup(self.n).get(tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c
                                              for c in self.coords))

    def norm(self):
        """Field norm to Q, as determinant of the multiplication matrix."""
        mat = [[Fraction(x) for x in row] for row in self.mult_matrix()]
        return _det_fraction(mat)

    def is_ring_unit(self):
        if not self.is_integral():
            return False
        nm = self.norm()
        return nm in (1, -1)

    def __str__(self):
        return format_cyclo(self)

    def __repr__(self):
        return f"CycloElem({self.n}, {self.coords})"


@lru_cache(maxsize=None)
def _root_lookup(n):
    out = {}
    for j in range(n):
        z = _power_table(n)[j]
        for s in (1, -1):
            key = tuple(s * c for c in z)
            out.setdefault(key, (s, j))
    return out


def _det_fraction(mat):
    m = len(mat)
    mat = [list(r) for r in mat]
    det = Fraction(1)
    for c in range(m):
        piv = next((r for r in range(c, m) if mat[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        for r in range(c + 1, m):
            if mat[r][c]:
                f = mat[r][c] / mat[c][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return det


def format_cyclo(c, name="z"):
    terms = []
    for i, a in enumerate(c.coords):
        if a:
            mon = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            terms.append((a, mon))
    if not terms:
        return "0"
    out = []
    for k, (a, mon) in enumerate(terms):
        mag = abs(a)
        body = mon if (mag == 1 and mon) else (f"{mag}*{mon}" if mon else str(mag))
        if k == 0:
            out.append(("-" if a < 0 else "") + body)
        else:
            out.append(("- " if a < 0 else "+ ") + body)
    return " ".join(out)


class CycloLaurent:
    """Univariate Laurent polynomial in t with coefficients in Z[zeta_n]."""

    __slots__ = ("n", "var", "terms")

    def __init__(self, n, terms=None, var="t"):
        self.n = n
        self.var = var
        clean = {}
        for e, c in (terms or {}).items():
            if isinstance(c, int):
                c = CycloElem.from_int(n, c)
            if c.n != n:
                raise VariableMismatch("coefficient order mismatch")
            if e in clean:
                c = clean[e] + c
            clean[e] = c
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    @classmethod
    def _raw(cls, n, terms, var="t"):
        obj = cls.__new__(cls)
        obj.n = n
        obj.var = var
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n, var="t"):
        return cls._raw(n, {}, var)

    @classmethod
    def const(cls, n, c, var="t"):
        if isinstance(c, int):
            c = CycloElem.from_int(n, c)
        return cls._raw(n, {0: c} if c else {}, var)

    @classmethod
    def from_laurent(cls, f, n):
        if len(f.vars) != 1:
            raise VariableMismatch("need a univariate polynomial")
        return cls._raw(n, {e[0]: CycloElem.from_int(n, c) for e, c in f.terms.items()}, f.vars[0])

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, int):
            return CycloLaurent.const(self.n, other, self.var)
        if isinstance(other, CycloElem):
            return CycloLaurent.const(self.n, other, self.var)
        if isinstance(other, CycloLaurent):
            if other.n != self.n:
                raise VariableMismatch(f"orders {self.n} and {other.n}")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t[e] + c if e in t else c
            if v.is_zero():
                t.pop(e, None)
            else:
                t[e] = v
        return CycloLaurent._raw(self.n, t, self.var)

    __radd__ = __add__

    def __neg__(self):
        return CycloLaurent._raw(self.n, {e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.n
        m = euler_phi(n)
        # accumulate unreduced products per exponent, reduce once at the end
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                k = e1 + e2
                prod = dense_mul(list(c1.coords), list(c2.coords)) if m > 1 else [c1.coords[0] * c2.coords[0]]
                cur = acc.get(k)
                if cur is None:
                    acc[k] = prod
                else:
                    if len(cur) < len(prod):
                        cur.extend([0] * (len(prod) - len(cur)))
                    for i, v in enumerate(prod):
                        cur[i] += v
        out = {}
        for k, v in acc.items():
            c = CycloElem._raw(n, _reduce(v, n))
            if not c.is_zero():
                out[k] = c
        return CycloLaurent._raw(n, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            inv = self.unit_inverse()
            if inv is None:
                raise NotDivisible("negative power of a non-unit")
            return inv ** (-k)
        result = CycloLaurent.const(self.n, 1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            return set(self.terms) == {0} and self.terms[0] == other
        if not isinstance(other, CycloLaurent):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_unit(self):
        if len(self.terms) != 1:
            return False
        return next(iter(self.terms.values())).unit_index() is not None

    def unit_inverse(self):
        if not self.is_unit():
            return None
        (e, c), = self.terms.items()
        s, j = c.unit_index()
        return CycloLaurent._raw(self.n, {-e: CycloElem.zeta(self.n, -j) * s}, self.var)

    def shift(self, k):
        if not k:
            return self
        return CycloLaurent._raw(self.n, {e + k: c for e, c in self.terms.items()}, self.var)

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def is_integral(self):
        return all(c.is_integral() for c in self.terms.values())

    def integer_content(self):
        g = 0
        for c in self.terms.values():
            for a in c.coords:
                g = igcd(g, int(a))
        return g

    def to_laurent(self):
        """Back to an integer LaurentPoly when every coefficient is rational."""
        out = {}
        for e, c in self.terms.items():
            out[(e,)] = c.to_int()
        return LaurentPoly((self.var,), out)

    def is_rational(self):
        return all(not any(c.coords[1:]) for c in self.terms.values())

    def mul_scalar(self, c):
        return CycloLaurent._raw(self.n, {e: v * c for e, v in self.terms.items() if not (v * c).is_zero()}, self.var)

    def __str__(self):
        return format_cyclo_laurent(self)

    def __repr__(self):
        return f"CycloLaurent(n={self.n}, {format_cyclo_laurent(self)!r})"

    def to_json(self):
        return {"order": self.n, "var": self.var,
                "terms": [[e, [int(a) if isinstance(a, int) or a.denominator == 1 else str(a)
                               for a in c.coords]]
                          for e, c in sorted(self.terms.items(), reverse=True)]}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["order"])
        terms = {}
        for e, coords in obj["terms"]:
            terms[int(e)] = CycloElem(n, [Fraction(a) if isinstance(a, str) else a for a in coords])
        return cls(n, terms, obj.get("var", "t"))


def format_cyclo_laurent(f, zname="z"):
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        mon = "" if e == 0 else (f.var if e == 1 else f"{f.var}^{e}")
        nz = [a for a in c.coords if a]
        if len(nz) == 1 and not any(c.coords[1:]):
            a = c.coords[0]
            body = mon if (abs(a) == 1 and mon) else (f"{abs(a)}*{mon}" if mon else str(abs(a)))
            parts.append(("-" if a < 0 else "+", body))
        else:
            cs = format_cyclo(c, zname)
            body = f"({cs})*{mon}" if mon else f"({cs})"
            parts.append(("+", body))
    out = []
    for i, (s, b) in enumerate(parts):
        if i == 0:
            out.append(("-" if s == "-" else "") + b)
        else:
            out.append(f"{s} {b}")
    return " ".join(out)


# field-level helpers: dense lists of CycloElem with Fraction coordinates

def _to_field_dense(f):
    lo = f.min_exp()
    hi = f.max_exp()
    zero = CycloElem._raw(f.n, (Fraction(0),) * euler_phi(f.n))
    out = [zero] * (hi - lo + 1)
    for e, c in f.terms.items():
        out[e - lo] = c.to_fraction()
    return lo, out


def _field_trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _field_divmod(a, b):
    a = list(a)
    b = _field_trim(list(b))
    inv = b[-1].inverse()
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _field_trim(a)
    q = [None] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c.is_zero():
            q[i] = c
            continue
        qc = c * inv
        q[i] = qc
        for j in range(db + 1):
            if not b[j].is_zero():
                a[i + j] = a[i + j] - qc * b[j]
    return _field_trim(q), _field_trim(a[:db])


def _field_monic(a):
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _field_gcd(a, b):
    a = _field_trim(list(a))
    b = _field_trim(list(b))
    while b:
        _, r = _field_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    return _field_monic(a)


def _clear_denominators(a, n):
    """Scale a dense field polynomial to integral coordinates with Z-content 1."""
    den = 1
    for c in a:
        for x in c.coords:
            if x:
                den = den * x.denominator // igcd(den, x.denominator)
    ints = [[int(x * den) for x in c.coords] for c in a]
    g = 0
    for row in ints:
        for x in row:
            g = igcd(g, x)
    if g > 1:
        ints = [[x // g for x in row] for row in ints]
    return [CycloElem._raw(n, tuple(row)) for row in ints]


def _rational_content(a):
    """Positive rational gcd of all coordinates (gcd of numerators over lcm of denominators)."""
    num = 0
    den = 1
    for c in a:
        for x in c.coords:
            x = Fraction(x)
            if x:
                num = igcd(num, x.numerator)
                den = den * x.denominator // igcd(den, x.denominator)
    return Fraction(num, den)


def cyclo_exact_div(f, g):
    if f.n != g.n:
        raise VariableMismatch("order mismatch")
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if not f.terms:
        return f
    if len(g.terms) == 1:
        (ge, gc), = g.terms.items()
        idx = gc.unit_index()
        if idx is not None:
            s, j = idx
            inv = CycloElem.zeta(f.n, -j) * s
            return CycloLaurent._raw(f.n, {e - ge: c * inv for e, c in f.terms.items()}, f.var)
    fs, fa = _to_field_dense(f)
    gs, ga = _to_field_dense(g)
    q, r = _field_divmod(fa, ga)
    if r:
        raise NotDivisible(f"{f} / {g}")
    out = {}
    for i, c in enumerate(q):
        if not c.is_zero():
            if not c.is_integral():
                raise NotDivisible(f"{f} / {g} (non-integral quotient)")
            out[i + fs - gs] = c.integral()
    return CycloLaurent._raw(f.n, out, f.var)


def cyclo_gcd(f, g):
    """gcd over Q(zeta_n)[t], returned as an integral representative.

    The field gcd is made integral with coprime Z-coordinates and then scaled
    by the rational content shared by the two cofactors, so plain integer
    inputs (n <= 2) keep their integer content.
    """
    if f.n != g.n:
        raise VariableMismatch("order mismatch")
    n = f.n
    if not f.terms and not g.terms:
        return f
    if euler_phi(n) == 1:
        from .polygcd import poly_gcd
        if not f.terms:
            return cyclo_normalize(g)
        if not g.terms:
            return cyclo_normalize(f)
        h = poly_gcd(f.to_laurent(), g.to_laurent())
        return CycloLaurent.from_laurent(h, n)
    if not f.terms:
        return cyclo_normalize(g)
    if not g.terms:
        return cyclo_normalize(f)
    if f.is_unit() or g.is_unit():
        return CycloLaurent.const(n, 1, f.var)
    _, fa = _to_field_dense(f)
    _, ga = _to_field_dense(g)
    h = _field_gcd(fa, ga)
    hi = _clear_denominators(h, n)
    hf = [c.to_fraction() for c in hi]
    qf, _ = _field_divmod(fa, hf)
    qg, _ = _field_divmod(ga, hf)
    cf, cg = _rational_content(qf), _rational_content(qg)
    c = Fraction(igcd(cf.numerator * cg.denominator, cg.numerator * cf.denominator),
                 cf.denominator * cg.denominator)
    terms = {}
    for i, v in enumerate(hi):
        w = v * c if c != 1 else v
        if not w.is_zero():
            terms[i] = w.integral() if w.is_integral() else w
    return cyclo_normalize(CycloLaurent._raw(n, terms, f.var))


def cyclo_gcd_many(polys, stop_at_unit=True):
    g = None
    for f in polys:
        g = cyclo_normalize(f) if g is None else cyclo_gcd(g, f)
        if stop_at_unit and g.terms and g.is_unit():
            return g
    return g


def _twist_key(f):
    lo = f.min_exp()
    return tuple(tuple(f.terms[e].coords) if e in f.terms else ()
                 for e in range(lo, f.max_exp() + 1))


def cyclo_normalize(f):
    """Canonical member of the orbit {+-zeta^j t^k f}: shift the lowest
    exponent to 0 and pick the twist with the lexicographically largest
    coefficient sequence."""
    if not f.terms:
        return f
    g = f.shift(-f.min_exp())
    best = None
    best_key = None
    seen = set()
    for j in range(f.n):
        z = CycloElem.zeta(f.n, j)
        for s in (1, -1):
            u = z * s
            if u.coords in seen:
                continue
            seen.add(u.coords)
            cand = CycloLaurent._raw(f.n, {e: c * u for e, c in g.terms.items()}, f.var)
            key = _twist_key(cand)
            if best_key is None or key > best_key:
                best, best_key = cand, key
    return best


def cyclo_equal_up_to_unit(f, g):
    if f.n != g.n:
        return False
    return cyclo_normalize(f) == cyclo_normalize(g)


def associated(f, g, over_field=False):
    """True when f = c*t^k*g with c a unit of Z[zeta_n] (or any nonzero
    element of Q(zeta_n) when over_field is set)."""
    if f.n != g.n:
        return False
    if not f.terms or not g.terms:
        return not f.terms and not g.terms
    if len(f.terms) != len(g.terms) or f.max_exp() - f.min_exp() != g.max_exp() - g.min_exp():
        return False
    fs = f.shift(-f.min_exp())
    gs = g.shift(-g.min_exp())
    c = fs.terms[0].to_fraction() * gs.terms[0].to_fraction().inverse()
    for e, v in gs.terms.items():
        if e not in fs.terms or fs.terms[e].to_fraction() != v.to_fraction() * c:
            return False
    if over_field:
        return True
    return c.is_integral() and c.is_ring_unit()


def cyclo_substitute(f, assignment, n, var="t"):
    """Send each variable of the LaurentPoly f to sign*zeta_n^j*t^k.

    assignment: var -> (j, k) or (sign, j, k).
    """
    imgs = []
    for v in f.vars:
        if v not in assignment:
            raise VariableMismatch(f"no assignment for {v}")
        a = assignment[v]
        if len(a) == 2:
            a = (1, a[0], a[1])
        imgs.append(a)
    acc = {}
    for e, c in f.terms.items():
        sign, j, k = 1, 0, 0
        for x, (s, jj, kk) in zip(e, imgs):
            if x:
                if s == -1 and x % 2:
                    sign = -sign
                j += jj * x
                k += kk * x
        key = (k, j % n)
        acc[key] = acc.get(key, 0) + sign * c
    out = {}
    table = _power_table(n)
    m = euler_phi(n)
    for (k, j), c in acc.items():
        if not c:
            continue
        cur = out.get(k)
        vec = table[j]
        if cur is None:
            cur = [0] * m
            out[k] = cur
        for i in range(m):
            if vec[i]:
                cur[i] += c * vec[i]
    terms = {k: CycloElem._raw(n, tuple(v)) for k, v in out.items() if any(v)}
    return CycloLaurent._raw(n, terms, var)
