"""Multivariate Laurent polynomials with integer coefficients.

A polynomial stores an ordered tuple of variable names and a dict mapping
exponent tuples (possibly negative entries) to nonzero ints. Values are
treated as immutable.
"""
from __future__ import annotations

import re
from math import gcd as igcd

from ..errors import NotDivisible, ParseError, VariableMismatch


def glex_key(e):
    return (sum(e), e)


class LaurentPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise VariableMismatch(f"exponent {e} does not match vars {self.vars}")
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        # trusted constructor: terms already pruned and well-shaped
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, vars):
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars):
        return cls.const(1, vars)

    @classmethod
    def var(cls, name, vars=None):
        vars = tuple(vars) if vars is not None else (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise VariableMismatch(f"{name} not in {vars}")
        return cls._raw(vars, {e: 1})

    @classmethod
    def monomial(cls, vars, exps, c=1):
        vars = tuple(vars)
        return cls._raw(vars, {tuple(exps): c} if c else {})

    @classmethod
    def from_dense(cls, coeffs, var="t", shift=0):
        """Univariate polynomial from coefficient list, constant term first."""
        return cls._raw((var,), {(i + shift,): c for i, c in enumerate(coeffs) if c})

    # basic predicates

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_unit(self):
        if len(self.terms) != 1:
            return False
        return abs(next(iter(self.terms.values()))) == 1

    def unit_inverse(self):
        if not self.is_unit():
            return None
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.vars, {tuple(-x for x in e): c})

    def __bool__(self):
        return bool(self.terms)

    # arithmetic

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly.const(other, self.vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.vars != self.vars:
            if not other.vars:
                return LaurentPoly.const(other.terms.get((), 0), self.vars)
            raise VariableMismatch(f"{self.vars} vs {other.vars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) - c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.vars, t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.vars)
            return LaurentPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        n = len(self.vars)
        if n == 1:
            for (e1,), c1 in b.items():
                for (e2,), c2 in a.items():
                    k = (e1 + e2,)
                    out[k] = out.get(k, 0) + c1 * c2
        else:
            for e1, c1 in b.items():
                for e2, c2 in a.items():
                    k = tuple(x + y for x, y in zip(e1, e2))
                    out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            inv = self.unit_inverse()
            if inv is None:
                raise NotDivisible("negative power of a non-unit")
            return inv ** (-n)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(x * n for x in e): c ** n})
        result = LaurentPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.vars != other.vars:
            if not self.terms and not other.terms:
                return True
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # structure

    def min_exponents(self):
        if not self.terms:
            return (0,) * len(self.vars)
        es = list(self.terms)
        return tuple(min(e[i] for e in es) for i in range(len(self.vars)))

    def max_exponents(self):
        if not self.terms:
            return (0,) * len(self.vars)
        es = list(self.terms)
        return tuple(max(e[i] for e in es) for i in range(len(self.vars)))

    def shift(self, exps):
        if not any(exps):
            return self
        return LaurentPoly._raw(self.vars, {tuple(x + y for x, y in zip(e, exps)): c
                                            for e, c in self.terms.items()})

    def sorted_terms(self, descending=False):
        return sorted(self.terms.items(), key=lambda ec: glex_key(ec[0]), reverse=descending)

    def content(self):
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
            if g == 1:
                break
        return g

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def degree_in(self, var):
        i = self.vars.index(var)
        if not self.terms:
            return None
        return max(e[i] for e in self.terms)

    def span(self):
        """Width max-min exponent per variable (the breadth of the polynomial)."""
        lo, hi = self.min_exponents(), self.max_exponents()
        return tuple(h - l for l, h in zip(lo, hi))

    def with_vars(self, new_vars):
        """Re-express in a superset/permutation of the variables."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in new_vars:
                raise VariableMismatch(f"{v} missing from {new_vars}")
            idx.append(new_vars.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return LaurentPoly._raw(new_vars, out)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def drop_unused(self):
        """Restrict to the variables that actually occur."""
        keep = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        vars = tuple(self.vars[i] for i in keep)
        return LaurentPoly._raw(vars, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    def to_dense(self):
        """Univariate: (shift, [c0, c1, ...]) with shift the minimum exponent."""
        if len(self.vars) != 1:
            raise VariableMismatch("to_dense needs exactly one variable")
        if not self.terms:
            return 0, []
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        out = [0] * (hi - lo + 1)
        for (e,), c in self.terms.items():
            out[e - lo] = c
        return lo, out

    def substitute(self, assignment, target_vars=None):
        """Ring homomorphism sending each variable to a LaurentPoly.

        ``assignment`` maps every variable of self to a LaurentPoly over the
        same target variables (or an int). Monomial images take a fast path.
        """
        images = []
        for v in self.vars:
            if v not in assignment:
                raise VariableMismatch(f"no assignment for {v}")
            images.append(assignment[v])
        if target_vars is None:
            for im in images:
                if isinstance(im, LaurentPoly):
                    target_vars = im.vars
                    break
            else:
                target_vars = ()
        target_vars = tuple(target_vars)
        images = [im if isinstance(im, LaurentPoly) else LaurentPoly.const(im, target_vars)
                  for im in images]
        for im in images:
            if im.vars != target_vars:
                raise VariableMismatch("images must share target variables")
        if all(len(im.terms) == 1 for im in images):
            mons = [next(iter(im.terms.items())) for im in images]
            out = {}
            m = len(target_vars)
            for e, c in self.terms.items():
                ne = [0] * m
                cc = c
                for x, (me, mc) in zip(e, mons):
                    if x:
                        for j in range(m):
                            ne[j] += me[j] * x
                        if mc != 1:
                            if x < 0:
                                if abs(mc) != 1:
                                    raise NotDivisible("negative power of non-unit image")
                            cc *= mc ** abs(x)
                key = tuple(ne)
                out[key] = out.get(key, 0) + cc
            return LaurentPoly._raw(target_vars, {e: c for e, c in out.items() if c})
        result = LaurentPoly.zero(target_vars)
        for e, c in self.terms.items():
            term = LaurentPoly.const(c, target_vars)
            for x, im in zip(e, images):
                if x:
                    term = term * (im ** x)
            result = result + term
        return result

    def eval_int(self, values):
        """Evaluate at integer points; negative exponents need unit values."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, val in zip(e, (values[name] for name in self.vars)):
                if x >= 0:
                    v *= val ** x
                else:
                    if abs(val) != 1:
                        raise NotDivisible("negative exponent at non-unit value")
                    v *= val ** (-x)
            total += v
        return total

    # serialization

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r}, vars={list(self.vars)})"

    def to_json(self):
        return {"vars": list(self.vars),
                "terms": [[list(e), c] for e, c in self.sorted_terms(descending=True)]}

    @classmethod
    def from_json(cls, obj):
        try:
            vars = tuple(obj["vars"])
            return cls(vars, {tuple(e): int(c) for e, c in obj["terms"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial term map: {exc}") from None


def _fmt_monomial(vars, e):
    parts = []
    for v, x in zip(vars, e):
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def format_poly(f, descending=True):
    """Pretty form, e.g. ``t^6 - t^3 + 1`` (graded-lex, highest term first)."""
    if not f.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(f.sorted_terms(descending=descending)):
        mon = _fmt_monomial(f.vars, e)
        a = abs(c)
        if mon:
            body = mon if a == 1 else f"{a}*{mon}"
        else:
            body = str(a)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*((?:[A-Za-z_][A-Za-z_0-9]*(?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?")


def parse_poly(text, vars=None):
    """Parse the output of ``format_poly`` (and the raw ``coeff*var^exp`` form)."""
    s = re.sub(r"\+\s*-", "-", text.strip())
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    raw = []
    seen = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, num, mons = m.group(1), m.group(2), m.group(3)
        if num is None and not mons.strip():
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        exps = {}
        for fm in _FACTOR.finditer(mons):
            name, x = fm.group(1), int(fm.group(2) or 1)
            exps[name] = exps.get(name, 0) + x
            if name not in seen:
                seen.append(name)
        raw.append((c, exps))
        pos = m.end()
        # allow "+-" raw separators
    if vars is None:
        vars = tuple(seen) if seen else ("t",)
    vars = tuple(vars)
    terms = {}
    for c, exps in raw:
        for name in exps:
            if name not in vars:
                raise ParseError(f"unknown variable {name}")
        e = tuple(exps.get(v, 0) for v in vars)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(vars, terms)


def normalize_unit(f):
    """Canonical representative of the orbit {±monomial·f}."""
    if not f.terms:
        return f
    lo = f.min_exponents()
    g = f.shift(tuple(-x for x in lo))
    first = min(g.terms, key=glex_key)
    if g.terms[first] < 0:
        g = -g
    return g


def equal_up_to_unit(f, g):
    if f.vars != g.vars:
        # allow comparison after dropping unused variables
        f2, g2 = normalize_unit(f).drop_unused(), normalize_unit(g).drop_unused()
        if f2.vars != g2.vars:
            return not f2.terms and not g2.terms or (f2.is_constant() and g2.is_constant()
                                                     and abs(f2.constant_value()) == abs(g2.constant_value()))
        return f2 == g2
    return normalize_unit(f) == normalize_unit(g)


def unit_factor(f, g):
    """Return (sign, shift) with f = sign * monomial(shift) * g, or None."""
    if f.vars != g.vars or len(f.terms) != len(g.terms):
        return None
    if not f.terms:
        return (1, (0,) * len(f.vars))
    fl, gl = f.min_exponents(), g.min_exponents()
    sh = tuple(a - b for a, b in zip(fl, gl))
    g2 = g.shift(sh)
    if g2 == f:
        return (1, sh)
    if -g2 == f:
        return (-1, sh)
    return None


def exact_div(f, g):
    """Return h with f == g*h, raising NotDivisible when none exists."""
    if isinstance(g, int):
        g = LaurentPoly.const(g, f.vars)
    if g.vars != f.vars:
        raise VariableMismatch(f"{f.vars} vs {g.vars}")
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if not f.terms:
        return f
    if len(g.terms) == 1:
        (ge, gc), = g.terms.items()
        out = {}
        for e, c in f.terms.items():
            q, r = divmod(c, gc)
            if r:
                raise NotDivisible(f"{f} / {g}")
            out[tuple(x - y for x, y in zip(e, ge))] = q
        return LaurentPoly._raw(f.vars, out)
    if len(f.vars) == 1:
        from .polygcd import dense_divmod
        fs, fd = f.to_dense()
        gs, gd = g.to_dense()
        q, r = dense_divmod(fd, gd)
        if q is None or any(r):
            raise NotDivisible(f"{f} / {g}")
        return LaurentPoly.from_dense(q, f.vars[0], fs - gs)
    # multivariate: shift both to polynomials with min exponent zero, divide by
    # graded-lex leading terms. g0 has no monomial factor, so divisibility in
    # the Laurent ring is the same as in the polynomial ring after shifting.
    fl, gl = f.min_exponents(), g.min_exponents()
    f0 = f.shift(tuple(-x for x in fl))
    g0 = g.shift(tuple(-x for x in gl))
    lt_e = max(g0.terms, key=glex_key)
    lt_c = g0.terms[lt_e]
    rem = dict(f0.terms)
    quot = {}
    gitems = list(g0.terms.items())
    while rem:
        e = max(rem, key=glex_key)
        c = rem[e]
        qe = tuple(x - y for x, y in zip(e, lt_e))
        if any(x < 0 for x in qe):
            raise NotDivisible(f"{f} / {g}")
        qc, r = divmod(c, lt_c)
        if r:
            raise NotDivisible(f"{f} / {g}")
        quot[qe] = qc
        for ge, gc in gitems:
            k = tuple(x + y for x, y in zip(qe, ge))
            v = rem.get(k, 0) - qc * gc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    h = LaurentPoly._raw(f.vars, quot)
    return h.shift(tuple(a - b for a, b in zip(fl, gl)))


def divides(g, f):
    try:
        exact_div(f, g)
        return True
    except NotDivisible:
        return False
