"""Free group words, integral group ring elements and Fox derivatives."""
from __future__ import annotations

from .algebra.laurent import LaurentPoly
from .errors import ParseError


class Word:
    """Freely reduced word; letters are (generator, +1/-1) pairs."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = _reduce(letters)

    @classmethod
    def gen(cls, g, e=1):
        if e == 0:
            return cls()
        sign = 1 if e > 0 else -1
        return cls([(g, sign)] * abs(e))

    @classmethod
    def parse(cls, text):
        letters = []
        for tok in text.split():
            if "^" in tok:
                name, _, exp = tok.partition("^")
                try:
                    e = int(exp)
                except ValueError:
                    raise ParseError(f"bad exponent in {tok!r}") from None
            else:
                name, e = tok, 1
            if not name:
                raise ParseError(f"bad token {tok!r}")
            letters.extend([(name, 1 if e > 0 else -1)] * abs(e))
        return cls(letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def is_identity(self):
        return not self.letters

    def generators(self):
        return {g for g, _ in self.letters}

    def exponent_sum(self, g):
        return sum(e for h, e in self.letters if h == g)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


def _reduce(letters):
    out = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError("letters carry exponent +1 or -1")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_mul(u, v):
    return u * v


def word_inv(u):
    return u.inverse()


class GroupRingElem:
    """Finite integer combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w, c=1):
        return cls({w: c})

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w, 0) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        out = GroupRingElem()
        out.terms = t
        return out

    def __neg__(self):
        out = GroupRingElem()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.terms.items()})
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                t[w] = t.get(w, 0) + c1 * c2
        return GroupRingElem(t)

    def left_mul(self, w):
        """w * self for a word w."""
        t = {}
        for w2, c in self.terms.items():
            k = w * w2
            t[k] = t.get(k, 0) + c
        return GroupRingElem(t)

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), str(wc[0]))):
            parts.append(f"{c}*[{w}]")
        return " + ".join(parts)

    __repr__ = __str__


def fox_derivative(w, g):
    """Left Fox derivative d(w)/d(g) in Z[F]."""
    terms = {}
    prefix = Word()
    for h, e in w.letters:
        if h == g:
            if e == 1:
                terms[prefix] = terms.get(prefix, 0) + 1
            else:
                k = prefix * Word(((g, -1),))
                terms[k] = terms.get(k, 0) - 1
        prefix = prefix * Word(((h, e),))
    return GroupRingElem(terms)


def abelianize(e, assignment, vars=None):
    """Image of a group ring element under generator -> Laurent monomial.

    ``assignment`` maps generator ids to LaurentPoly monomials sharing vars.
    """
    if vars is None:
        vars = next(iter(assignment.values())).vars if assignment else ()
    n = len(vars)
    mono = {}
    for g, m in assignment.items():
        (ex, c), = m.terms.items()
        if c != 1:
            raise ValueError("assignment images must be monic monomials")
        mono[g] = ex
    out = {}
    for w, c in e.terms.items():
        ex = [0] * n
        for g, s in w.letters:
            try:
                me = mono[g]
            except KeyError:
                raise KeyError(f"no assignment for generator {g}") from None
            for i in range(n):
                ex[i] += s * me[i]
        k = tuple(ex)
        out[k] = out.get(k, 0) + c
    return LaurentPoly(vars, out)


def abelian_fox(w, g, assignment, vars=None):
    """abelianize(fox_derivative(w, g)) computed in one pass."""
    if vars is None:
        vars = next(iter(assignment.values())).vars
    n = len(vars)
    mono = {h: next(iter(m.terms)) for h, m in assignment.items()}
    cur = [0] * n
    out = {}
    for h, e in w.letters:
        me = mono[h]
        if h == g:
            if e == 1:
                k = tuple(cur)
                out[k] = out.get(k, 0) + 1
            else:
                k = tuple(c - x for c, x in zip(cur, me))
                out[k] = out.get(k, 0) - 1
        for i in range(n):
            cur[i] += e * me[i]
    return LaurentPoly(vars, out)


def word_image(w, assignment, vars=None):
    """Abelian image of a word as a monomial."""
    return abelianize(GroupRingElem.of(w), assignment, vars)
