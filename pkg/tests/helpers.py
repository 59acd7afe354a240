"""Shared test helpers: bundled fixtures and a sympy oracle."""
import glob
import os

import sympy

from lensalex.algebra import LaurentPoly
from lensalex.diagram import load

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "lensalex", "data")


def fixture_path(name):
    return os.path.join(DATA, name + ".json")


def fixture(name):
    return load(fixture_path(name))


def corpus_names():
    out = []
    for f in sorted(glob.glob(os.path.join(DATA, "*.json"))):
        n = os.path.splitext(os.path.basename(f))[0]
        if n != "tables":
            out.append(n)
    return out


def corpus():
    return [fixture(n) for n in corpus_names()]


# sympy bridge, used as an independent oracle

def to_sympy(f):
    syms = sympy.symbols(f.vars)
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        m = sympy.Integer(c)
        for s, x in zip(syms, e):
            m *= s ** x
        expr += m
    return expr, syms


def from_sympy(expr, vars):
    syms = sympy.symbols(vars)
    if not isinstance(syms, tuple):
        syms = (syms,)
    num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
    p = sympy.Poly(sympy.expand(num), *syms)
    dp = sympy.Poly(den, *syms)
    assert len(dp.terms()) == 1, "only monomial denominators"
    (de, dc), = dp.terms()
    terms = {}
    for e, c in p.terms():
        q = sympy.Rational(c, dc)
        assert q.is_integer
        terms[tuple(a - b for a, b in zip(e, de))] = int(q)
    return LaurentPoly(tuple(vars), terms)


def sympy_poly(f):
    """f shifted to an honest polynomial, as a sympy Poly."""
    expr, syms = to_sympy(f)
    lo = f.min_exponents() if f.terms else (0,) * len(syms)
    for s, x in zip(syms, lo):
        expr = expr * s ** (-x)
    return sympy.Poly(sympy.expand(expr), *syms)


def sympy_associates(f, g):
    """f and g differ by a signed monomial (checked with sympy)."""
    if not f.terms or not g.terms:
        return not f.terms and not g.terms
    a, b = sympy_poly(f), sympy_poly(g)
    q, r = sympy.div(a, b)
    if not r.is_zero:
        return False
    return len(q.terms()) == 1 and abs(q.terms()[0][1]) == 1
