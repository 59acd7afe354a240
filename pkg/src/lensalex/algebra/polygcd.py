"""Polynomial gcd over the integers.

Univariate work happens on dense coefficient lists (constant term first).
Several variables are handled recursively: pick a main variable, split off
the content (a gcd over the remaining variables), and run a subresultant
remainder sequence on the primitive parts.
"""
from __future__ import annotations

from math import gcd as igcd

from .laurent import LaurentPoly, exact_div, normalize_unit


# dense univariate helpers

def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_content(a):
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def dense_divmod(a, b):
    """Exact-coefficient division over Z. Returns (q, r), or (None, None)
    when some quotient coefficient is not an integer."""
    a = list(a)
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError
    lb = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c:
            qc, r = divmod(c, lb)
            if r:
                return None, None
            q[i] = qc
            for j in range(db + 1):
                a[i + j] -= qc * b[j]
    return trim(q), trim(a[:db])


def dense_prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        k = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[k + j] -= c * b[j]
        a.pop()
        trim(a)
        e -= 1
    if e > 0:
        f = lb ** e
        a = [x * f for x in a]
    return a


def dense_gcd(a, b):
    """gcd in Z[t] of two dense polynomials, leading coefficient positive."""
    a = trim(list(a))
    b = trim(list(b))
    if not a:
        return _dense_sign(b)
    if not b:
        return _dense_sign(a)
    if len(a) < len(b):
        a, b = b, a
    ca, cb = dense_content(a), dense_content(b)
    d = igcd(ca, cb)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = dense_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [1]
            break
        a, b = b, [x // (g * h ** delta) for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
    cb = dense_content(b)
    b = [d * x // cb for x in b]
    return _dense_sign(b)


def _dense_sign(a):
    if a and a[-1] < 0:
        return [-x for x in a]
    return list(a)


# multivariate

def _split(f, i):
    """View f as a polynomial in variable i: dict degree -> coefficient poly
    (with exponent i zeroed)."""
    vars = f.vars
    parts = {}
    for e, c in f.terms.items():
        k = e[i]
        ee = e[:i] + (0,) + e[i + 1:]
        parts.setdefault(k, {})[ee] = c
    return {k: LaurentPoly._raw(vars, t) for k, t in parts.items()}


def _join(coeffs, i, vars):
    out = {}
    for k, cpoly in enumerate(coeffs):
        for e, c in cpoly.terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = c
    return LaurentPoly._raw(vars, out)


def _present(f):
    return [i for i in range(len(f.vars)) if any(e[i] for e in f.terms)]


def _poly_gcd(f, g):
    """gcd of two genuine polynomials (nonnegative exponents), up to sign."""
    vars = f.vars
    if not f.terms:
        return g
    if not g.terms:
        return f
    idx = sorted(set(_present(f)) | set(_present(g)))
    if not idx:
        return LaurentPoly.const(igcd(f.constant_value(), g.constant_value()), vars)
    if len(idx) == 1:
        i = idx[0]
        da = [0] * (f.max_exponents()[i] + 1)
        for e, c in f.terms.items():
            da[e[i]] = c
        db = [0] * (g.max_exponents()[i] + 1)
        for e, c in g.terms.items():
            db[e[i]] = c
        r = dense_gcd(da, db)
        out = {}
        zero = [0] * len(vars)
        for k, c in enumerate(r):
            if c:
                ee = list(zero)
                ee[i] = k
                out[tuple(ee)] = c
        return LaurentPoly._raw(vars, out)
    i = idx[0]
    fa = _as_list(f, i)
    ga = _as_list(g, i)
    cf = _content_list(fa)
    cg = _content_list(ga)
    content = _poly_gcd(cf, cg)
    if len(fa) == 1 or len(ga) == 1:
        # one of them is free of the main variable
        return content
    pa = [exact_div(c, cf) for c in fa]
    pb = [exact_div(c, cg) for c in ga]
    h = _subresultant(pa, pb)
    if len(h) == 1:
        return content
    ch = _content_list(h)
    h = [exact_div(c, ch) for c in h]
    return _join(h, i, vars) * content


def _as_list(f, i):
    parts = _split(f, i)
    n = max(parts) + 1
    zero = LaurentPoly.zero(f.vars)
    return [parts.get(k, zero) for k in range(n)]


def _content_list(coeffs):
    g = None
    for c in coeffs:
        if not c.terms:
            continue
        g = c if g is None else _poly_gcd(g, c)
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
    if g is None:
        return LaurentPoly.zero(coeffs[0].vars)
    return g


def _trim_list(a):
    while a and not a[-1].terms:
        a.pop()
    return a


def _prem_list(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while a and len(a) - 1 >= db:
        c = a[-1]
        k = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            if b[j].terms:
                a[k + j] = a[k + j] - c * b[j]
        a.pop()
        _trim_list(a)
        e -= 1
    if e > 0 and a:
        f = lb ** e
        a = [x * f for x in a]
    return a


def _subresultant(a, b):
    """Subresultant PRS over a coefficient domain of LaurentPolys. Inputs are
    primitive in the main variable; output is a (not necessarily primitive)
    gcd candidate."""
    if len(a) < len(b):
        a, b = b, a
    vars = a[0].vars
    one = LaurentPoly.one(vars)
    g = h = one
    while True:
        delta = len(a) - len(b)
        r = _prem_list(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [one]
        denom = g * h ** delta
        a, b = b, [exact_div(x, denom) for x in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g ** delta, h ** (delta - 1))


def poly_gcd(f, g):
    """Normalized gcd of two Laurent polynomials over the same variables."""
    if f.vars != g.vars:
        from ..errors import VariableMismatch
        raise VariableMismatch(f"{f.vars} vs {g.vars}")
    if not f.terms and not g.terms:
        return f
    if not f.terms:
        return normalize_unit(g)
    if not g.terms:
        return normalize_unit(f)
    f0 = f.shift(tuple(-x for x in f.min_exponents()))
    g0 = g.shift(tuple(-x for x in g.min_exponents()))
    if f0.is_unit() or g0.is_unit():
        return LaurentPoly.one(f.vars)
    return normalize_unit(_poly_gcd(f0, g0))


def gcd_many(polys, stop_at_unit=True):
    """Fold gcd over an iterable; stops early once a unit is reached."""
    g = None
    for f in polys:
        if g is None:
            g = normalize_unit(f)
        else:
            g = poly_gcd(g, f)
        if stop_at_unit and g.terms and g.is_unit():
            return g
    return g
