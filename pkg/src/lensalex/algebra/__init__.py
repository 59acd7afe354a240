"""Exact ring arithmetic used by every invariant computation."""
from math import gcd as igcd

from ..errors import NotCoprime, NotDivisible
from .cyclo import (CycloElem, CycloLaurent, associated, cyclo_equal_up_to_unit,
                    cyclo_exact_div, cyclo_gcd, cyclo_gcd_many, cyclo_normalize,
                    cyclo_substitute, cyclotomic_poly, euler_phi)
from .laurent import (LaurentPoly, divides, equal_up_to_unit, exact_div, format_poly,
                      normalize_unit, parse_poly, unit_factor)
from .polygcd import gcd_many, poly_gcd

__all__ = [
    "LaurentPoly", "CycloElem", "CycloLaurent", "parse_poly", "format_poly",
    "normalize_unit", "equal_up_to_unit", "exact_div", "divides", "gcd", "gcd_many",
    "substitute", "lambda1", "unit_factor", "cyclotomic_poly", "euler_phi",
    "cyclo_gcd", "cyclo_gcd_many", "cyclo_normalize", "cyclo_equal_up_to_unit",
    "cyclo_exact_div", "associated", "any_gcd", "any_normalize", "any_equal_up_to_unit",
]


def gcd(f, g):
    if isinstance(f, CycloLaurent):
        return cyclo_gcd(f, g)
    return poly_gcd(f, g)


def substitute(f, assignment, var="t", order=None):
    """Substitute monomials (optionally twisted by roots of unity) for the variables of f.

    Values of ``assignment`` are an int k (meaning t^k), a pair (j, k)
    (meaning zeta_order^j t^k), or a LaurentPoly image. With ``order`` None
    or 1 the result is a LaurentPoly, otherwise a CycloLaurent over
    Z[zeta_order].
    """
    if order is None or order == 1:
        imgs = {}
        for v, a in assignment.items():
            if isinstance(a, LaurentPoly):
                imgs[v] = a
            elif isinstance(a, tuple):
                if a[0] % (order or 1):
                    raise ValueError("root-of-unity twist needs an order")
                imgs[v] = LaurentPoly.monomial((var,), (a[1],))
            else:
                imgs[v] = LaurentPoly.monomial((var,), (a,))
        tv = next(iter(imgs.values())).vars if imgs else (var,)
        return f.substitute(imgs, tv)
    spec = {}
    for v, a in assignment.items():
        if isinstance(a, tuple):
            spec[v] = a
        else:
            spec[v] = (0, a)
    return cyclo_substitute(f, spec, order, var)


def lambda1(p, q, var="u"):
    """(u^(pq)-1)(u-1) / ((u^p-1)(u^q-1)), computed by exact division."""
    if p == 0 or q == 0 or igcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    u = LaurentPoly.var(var)
    num = (u ** (p * q) - 1) * (u - 1)
    den = (u ** p - 1) * (u ** q - 1)
    return exact_div(num, den)


def any_gcd(f, g):
    return gcd(f, g)


def any_normalize(f):
    if isinstance(f, CycloLaurent):
        return cyclo_normalize(f)
    return normalize_unit(f)


def any_equal_up_to_unit(f, g):
    if isinstance(f, CycloLaurent) or isinstance(g, CycloLaurent):
        if isinstance(f, LaurentPoly):
            f = CycloLaurent.from_laurent(f, g.n)
        if isinstance(g, LaurentPoly):
            g = CycloLaurent.from_laurent(g, f.n)
        return cyclo_equal_up_to_unit(f, g)
    return equal_up_to_unit(f, g)
