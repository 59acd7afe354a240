"""Alexander and twisted Alexander polynomials of links in lens spaces.

Two independent routes are offered. The direct route builds the Fox matrix of
the lens space presentation, abelianizes it onto the free part of H_1 (or a
twisted version of it) and takes the gcd of the codimension-one minors. The
formula route works with the classical link L' u U in S^3 only, substitutes
into its two-variable Alexander-Fox matrix and divides by the surgery factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as igcd

from .algebra import (CycloLaurent, LaurentPoly, any_equal_up_to_unit, any_normalize,
                      associated, cyclo_exact_div, exact_div, format_poly, normalize_unit,
                      substitute, unit_factor)
from .algebra.cyclo import CycloElem, format_cyclo_laurent
from .diagram import (MixedDiagram, SurgeryChain, ensure_valid, flip_crossing, flux, flux_data,
                      kbar, reverse_orientation, smooth_crossing)
from .errors import (DegenerateFlux, NotDivisible, NotInternalCrossing, PreconditionError, RouteDisagreement,
                     UnsupportedChainDepth)
from .freegroup import Word, abelian_fox
from .minors import minor_gcd
from .presentation import Presentation, chain_presentation, lens_presentation, wirtinger_relator, wirtinger_s3


@dataclass
class FoxMatrix:
    """rows = generators, cols = relators; entries[i][j] = d(rel_j)/d(gen_i)."""
    generators: list
    relators: list  # (Word, tag)
    entries: list
    assignment: dict = field(default_factory=dict)

    @property
    def shape(self):
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def column(self, j):
        return [row[j] for row in self.entries]

    def columns_tagged(self, tag):
        return [j for j, (_, t) in enumerate(self.relators) if t == tag]

    def drop_columns(self, cols):
        cols = set(cols)
        return FoxMatrix(self.generators, [r for j, r in enumerate(self.relators) if j not in cols],
                         [[x for j, x in enumerate(row) if j not in cols] for row in self.entries],
                         dict(self.assignment))

    def map(self, fn, assignment=None):
        return FoxMatrix(self.generators, self.relators,
                         [[fn(x) for x in row] for row in self.entries],
                         assignment if assignment is not None else dict(self.assignment))

    def substitute(self, values, order=None, var="t"):
        """values: variable -> int k (t^k) or (j, k) meaning zeta_order^j t^k."""
        return self.map(lambda f: substitute(f, values, var, order),
                        {g: substitute(m, values, var, order) for g, m in self.assignment.items()})

    def fox_identity_holds(self):
        """Sum_i entries[i][j] * (image(g_i) - 1) == image(rel_j) - 1 for every column."""
        imgs = []
        for g in self.generators:
            imgs.append(self.assignment[g])
        for j, (w, _) in enumerate(self.relators):
            tot = None
            for i, g in enumerate(self.generators):
                term = self.entries[i][j] * (imgs[i] - 1)
                tot = term if tot is None else tot + term
            wimg = _word_value(w, dict(zip(self.generators, imgs)))
            if tot != wimg - 1:
                return False
        return True

    def minor_gcd(self, r=None, exhaustive=False):
        g = len(self.generators)
        # a matrix without columns still knows its ring through the assignment
        sample = next(iter(self.assignment.values()), None)
        return minor_gcd(self.entries, g - 1 if r is None else r, exhaustive, sample)


def _word_value(w, imgs):
    out = None
    for g, e in w.letters:
        m = imgs[g] if e == 1 else imgs[g].unit_inverse()
        out = m if out is None else out * m
    if out is None:
        some = next(iter(imgs.values()))
        return some * 0 + 1
    return out


def fox_matrix(pres, assignment):
    """Abelianized Fox matrix; assignment maps each generator to a monic
    LaurentPoly monomial."""
    vars = next(iter(assignment.values())).vars
    entries = [[abelian_fox(w, g, assignment, vars) for w, _ in pres.relators]
               for g in pres.generators]
    return FoxMatrix(list(pres.generators), list(pres.relators), entries, dict(assignment))


def _grading(pres, names=("x", "a", "b")):
    """L generators -> first variable, surgery layer j -> names[j+1]."""
    nl = len(pres.layers)
    vars = tuple(names[: nl + 1])
    assign = {}
    x = LaurentPoly.var(vars[0], vars)
    for g in pres.l_generators():
        assign[g] = x
    for j, lay in enumerate(pres.layers):
        v = LaurentPoly.var(vars[j + 1], vars)
        for g in lay:
            assign[g] = v
    return assign


def two_variable_matrix(d):
    """A(x, a): Fox matrix of the lens presentation, L -> x, U -> a."""
    pres = lens_presentation(d) if isinstance(d, MixedDiagram) else d
    return fox_matrix(pres, _grading(pres))


def s3_matrix(d):
    """Two-variable Alexander-Fox matrix of the classical link L' u U."""
    pres = wirtinger_s3(d)
    return fox_matrix(pres, _grading(pres))


# polynomial record

@dataclass
class AlexPoly:
    value: object
    route: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = any_normalize(self.value)

    def is_zero(self):
        return not self.value

    def __str__(self):
        if isinstance(self.value, CycloLaurent):
            return format_cyclo_laurent(self.value)
        return format_poly(self.value)

    def to_json(self):
        return {"value": self.value.to_json(), "display": str(self), "route": self.route,
                "params": self.params}

    def equivalent(self, other):
        return equivalent(self.value, other.value if isinstance(other, AlexPoly) else other)


def equivalent(f, g):
    """Equality up to units; twisted values over Q(zeta) fields of degree > 1
    are compared as associates in Z[zeta][t^+-1]."""
    if isinstance(f, CycloLaurent) or isinstance(g, CycloLaurent):
        if any_equal_up_to_unit(f, g):
            return True
        if isinstance(f, LaurentPoly):
            f = CycloLaurent.from_laurent(f, g.n)
        if isinstance(g, LaurentPoly):
            g = CycloLaurent.from_laurent(g, f.n)
        return associated(f, g)
    return any_equal_up_to_unit(f, g)


def _params(d, **extra):
    fd = flux(d)
    out = {"p": d.p, "q": d.q, "kbar": fd.kbar, "d": fd.d, "p_prime": fd.p_prime,
           "k_prime": fd.k_prime}
    out.update(extra)
    return out


def _t():
    return LaurentPoly.var("t")


def _tpow(k):
    return LaurentPoly.monomial(("t",), (k,))


# direct route

def alexander_direct(d, exhaustive=False):
    """gcd of the codimension-one minors of A(t^p', t^(q k'))."""
    ensure_valid(d)
    fd = flux(d)
    if fd.kbar == 0:
        raise DegenerateFlux("kbar = 0: the untwisted value comes from alexander_formula")
    A = two_variable_matrix(d).substitute({"x": fd.p_prime, "a": d.q * fd.k_prime})
    return AlexPoly(A.minor_gcd(exhaustive=exhaustive), "direct", _params(d))


def _order_and_root(p, m):
    m %= p
    if m == 0:
        return 1, 0
    g = igcd(p, m)
    return p // g, m // g


def twisted_alexander(d, m, exhaustive=False):
    """Delta^mu with mu = zeta_d^m, realized by nu = zeta_p^m."""
    ensure_valid(d)
    fd = flux(d)
    if not 0 <= m < fd.d:
        raise PreconditionError(f"mu index {m} outside [0, {fd.d})")
    n, j = _order_and_root(d.p, m)
    A = two_variable_matrix(d)
    vals = {"x": fd.p_prime, "a": (j, d.q * fd.k_prime)}
    A = A.substitute(vals, order=n)
    return AlexPoly(A.minor_gcd(exhaustive=exhaustive), "direct",
                    _params(d, m=m, mu=f"zeta_{fd.d}^{m}", nu=f"zeta_{d.p}^{m}", ring_order=n))


# classical polynomials

def link_only_presentation(d):
    """Wirtinger presentation of L' alone: above and below arcs of every
    strand merge once U is forgotten."""
    parent = {a: a for a in d.arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    strands = d.disk_strands if isinstance(d, MixedDiagram) else [s for l in d.layers for s in l.disk_strands]
    for s in strands:
        ra, rb = find(s.above), find(s.below)
        if ra != rb:
            parent[rb] = ra
    gens, arc_gen, gen_arc = [], {}, {}
    for a in d.arcs:
        r = find(a)
        if r not in arc_gen:
            g = f"x{len(gens) + 1}"
            gens.append(g)
            arc_gen[r] = g
            gen_arc[g] = r
    rel = [(wirtinger_relator(c.sign, arc_gen[find(c.under_out)], arc_gen[find(c.over)],
                              arc_gen[find(c.under_in)]), "wirtinger") for c in d.crossings]
    return Presentation(gens, rel, gen_arc, {a: arc_gen[find(a)] for a in d.arcs}, [], [])


def classical_alexander(d, grading="t"):
    """Classical (S^3) Alexander polynomial as a gcd of codimension-one minors.

    grading "t": L' alone, every meridian -> t. grading "xa": the link
    L' u U with L -> x and U -> a. grading "components": L' alone with one
    variable t1, t2, ... per component.
    """
    if grading == "xa":
        return s3_matrix(d).minor_gcd()
    pres = link_only_presentation(d)
    if grading == "t":
        t = _t()
        assign = {g: t for g in pres.generators}
    elif grading == "components":
        comp = d.component_of()
        vars = tuple(f"t{i + 1}" for i in range(len(d.components)))
        assign = {g: LaurentPoly.var(vars[comp[pres.gen_arc[g]]], vars) for g in pres.generators}
    else:
        raise ValueError(f"unknown grading {grading!r}")
    return fox_matrix(pres, assign).minor_gcd()


# formula route

def _divide(f, g):
    if isinstance(f, CycloLaurent):
        if not isinstance(g, CycloLaurent):
            g = CycloLaurent.from_laurent(g, f.n)
        return cyclo_exact_div(f, g)
    return exact_div(f, g)


def alexander_formula(d):
    """Delta(L) from the classical link L' u U.

    kbar != 0: gcd of the minors of B(t^p', t^(q k')) divided by t^k' - 1.
    kbar = 0: x -> t, a -> t^q, divided by t - 1.
    """
    ensure_valid(d)
    fd = flux(d)
    B = s3_matrix(d)
    if fd.kbar == 0:
        vals, div = {"x": 1, "a": d.q}, _t() - 1
    else:
        vals, div = {"x": fd.p_prime, "a": d.q * fd.k_prime}, _tpow(fd.k_prime) - 1
    g = B.substitute(vals).minor_gcd()
    return AlexPoly(_divide(g, div), "formula", _params(d))


def twisted_formula(d, m):
    """Closed forms for the twisted polynomial when they exist: affine
    diagrams (p * Delta(L') for mu = 1, zero otherwise) and kbar = 0 with
    mu != 1 (B(t, mu) minors divided by mu - 1)."""
    ensure_valid(d)
    fd = flux(d)
    if not 0 <= m < fd.d:
        raise PreconditionError(f"mu index {m} outside [0, {fd.d})")
    n, j = _order_and_root(d.p, m)
    extra = dict(m=m, mu=f"zeta_{fd.d}^{m}", ring_order=n)
    if d.is_affine():
        if m:
            return AlexPoly(CycloLaurent.zero(n), "formula", _params(d, **extra))
        return AlexPoly(classical_alexander(d, "t") * d.p, "formula", _params(d, **extra))
    if fd.kbar != 0:
        raise PreconditionError("closed twisted form needs an affine diagram or kbar = 0")
    if m == 0:
        raise PreconditionError("mu = 1 with kbar = 0 has no closed twisted form")
    B = s3_matrix(d).substitute({"x": 1, "a": (j, 0)}, order=n)
    g = B.minor_gcd()
    mu = CycloLaurent(n, {0: CycloElem.zeta(n, j) - 1})
    # the gcd is only defined up to units, so mu - 1 divides it exactly only
    # when it is itself a unit or happens to divide the chosen representative
    try:
        val = cyclo_exact_div(g, mu) if g else g
        extra["up_to"] = "ring units"
    except NotDivisible:
        val = g
        extra["up_to"] = "field units"
    return AlexPoly(val, "formula", _params(d, **extra))


def twisted_equivalent(a, b):
    """Route comparison for twisted values: exact associates, or associates
    over the cyclotomic field when a closed form was only defined there."""
    fa, fb = a.value, b.value
    if equivalent(fa, fb):
        return True
    loose = "field units" in (a.params.get("up_to"), b.params.get("up_to"))
    if not loose:
        return False
    if isinstance(fa, LaurentPoly):
        fa = CycloLaurent.from_laurent(fa, 1 if not isinstance(fb, CycloLaurent) else fb.n)
    if isinstance(fb, LaurentPoly):
        fb = CycloLaurent.from_laurent(fb, fa.n)
    return associated(fa, fb, over_field=True)


def alexander(d):
    """Untwisted polynomial: direct route when kbar != 0, else the formula."""
    if kbar(d) == 0:
        return alexander_formula(d)
    return alexander_direct(d)


def both_routes(d):
    """(direct, formula), raising RouteDisagreement if they differ."""
    if kbar(d) == 0:
        f = alexander_formula(d)
        return None, f
    a = alexander_direct(d)
    b = alexander_formula(d)
    if not a.equivalent(b):
        raise RouteDisagreement(f"direct {a} vs formula {b}")
    return a, b


# theorems as checks

def single_piercing_alexander(d):
    """Delta(L')(t^p) for a diagram meeting the disk once, checked against
    the direct route."""
    ensure_valid(d)
    if d.k != 1:
        raise PreconditionError(f"needs exactly one disk strand, got {d.k}")
    base = classical_alexander(d, "t")
    val = base.substitute({"t": _tpow(d.p)}, ("t",))
    out = AlexPoly(val, "formula", _params(d))
    direct = alexander_direct(d)
    if not out.equivalent(direct):
        raise RouteDisagreement(f"Delta(L')(t^p) = {out} but direct gives {direct}")
    return out


def check_consistency_corollary(d):
    """Delta(L' u U)(t^p, t^q) ~ (t - 1) Delta(L')(t^p) for k = 1."""
    if d.k != 1:
        raise PreconditionError(f"needs exactly one disk strand, got {d.k}")
    lhs = s3_matrix(d).substitute({"x": d.p, "a": d.q}).minor_gcd()
    base = classical_alexander(d, "t").substitute({"t": _tpow(d.p)}, ("t",))
    return equivalent(lhs, (_t() - 1) * base)


def lens_column_identity(d):
    """(t^k' - 1) l = lambda1(p, q)(t^k') * sum_i x^(eps_1 + ... + eps_(i-1)) r_i
    as an exact column identity of A(t^p', t^(q k'))."""
    ensure_valid(d)
    fd = flux(d)
    if fd.kbar == 0:
        raise DegenerateFlux("the lens column identity needs kbar != 0")
    from .algebra import lambda1
    A = two_variable_matrix(d).substitute({"x": fd.p_prime, "a": d.q * fd.k_prime})
    lens = A.column(A.columns_tagged("lens")[0])
    rcols = [A.column(j) for j in A.columns_tagged("u_under")]
    tk = _tpow(fd.k_prime)
    lam = lambda1(d.p, d.q).substitute({"u": tk}, ("t",))
    comb = [LaurentPoly.zero(("t",))] * len(lens)
    pre = 0
    for col, s in zip(rcols, d.disk_strands):
        xe = _tpow(fd.p_prime * pre)
        comb = [c + xe * y for c, y in zip(comb, col)]
        pre += s.eps
    return all((tk - 1) * a == lam * b for a, b in zip(lens, comb))


def _invert_t(f):
    if isinstance(f, CycloLaurent):
        # t -> t^-1 and zeta stays; only used for rational values here
        return CycloLaurent(f.n, {-k: c for k, c in f.terms.items()}, f.var)
    return f.substitute({"t": _tpow(-1)}, ("t",))


def check_orientation(d, m=None):
    """Delta(-L)(t) ~ Delta(L)(t^-1); with m the twisted polynomial for
    mu = zeta_d^m is compared against the reversed link at mu^-1."""
    r = reverse_orientation(d)
    if m is None:
        return equivalent(alexander(r).value, _invert_t(alexander(d).value))
    fd = flux(d)
    a = twisted_alexander(d, m).value
    b = twisted_alexander(r, (-m) % fd.d).value
    return equivalent(b, _invert_t(a))


@dataclass
class SkeinReport:
    plus: object
    minus: object
    zero: object
    p_prime: int
    witness: tuple = None  # (sign+, shift+, sign-, shift-) in the u variable
    bound: int = 0

    @property
    def ok(self):
        return self.witness is not None

    def lines(self):
        out = [f"L+ : {format_poly(self.plus)}", f"L- : {format_poly(self.minus)}",
               f"L0 : {format_poly(self.zero)}", f"p' = {self.p_prime}"]
        if self.ok:
            s1, j1, s2, j2 = self.witness
            out.append(f"units (u = t^1/2): L+ * {s1:+d}u^{j1}, L- * {s2:+d}u^{j2}, L0 * 1")
            out.append("PASS")
        else:
            out.append(f"no unit assignment within |j| <= {self.bound}")
            out.append("FAIL")
        return out


def _to_u(f):
    return f.substitute({"t": LaurentPoly.monomial(("u",), (2,))}, ("u",))


def _span_u(f):
    if not f:
        return 0
    return f.max_exponents()[0] - f.min_exponents()[0]


def skein_triple(d, i):
    """(L+, L-, L0) for crossing i; L+ is whichever of d and its flip has a
    positive crossing there."""
    if not 0 <= i < len(d.crossings):
        raise NotInternalCrossing(f"crossing index {i} out of range")
    flipped = flip_crossing(d, i)
    if d.crossings[i].sign == 1:
        plus, minus = d, flipped
    else:
        plus, minus = flipped, d
    return plus, minus, smooth_crossing(d, i)


def check_skein(d, i, bound=None, route=None):
    """Search units making Delta(L+) - Delta(L-) = (u^p' - u^-p') Delta(L0)
    hold exactly under t = u^2."""
    ensure_valid(d)
    plus, minus, zero = skein_triple(d, i)
    route = route or alexander_formula
    P, M, Z = (route(x).value for x in (plus, minus, zero))
    pp = flux(d).p_prime
    Pu, Mu, Zu = _to_u(P), _to_u(M), _to_u(Z)
    u = LaurentPoly.var("u")
    factor = _tpow_u(pp) - _tpow_u(-pp)
    rhs = factor * Zu
    if bound is None:
        bound = 2 * max(_span_u(Pu), _span_u(Mu), _span_u(rhs)) + 2
    rep = SkeinReport(P, M, Z, pp, None, bound)
    # normalize every term to exponent 0 minimum so shifts stay small
    Pu, Mu, rhs = _lowshift(Pu), _lowshift(Mu), _lowshift(rhs)
    zero_u = LaurentPoly.zero(("u",))
    if not Pu and not Mu:
        if not rhs:
            rep.witness = (1, 0, 1, 0)
        return rep
    for s1 in (1, -1):
        for j1 in range(-bound, bound + 1):
            lhs = (Pu * (s1 * LaurentPoly.monomial(("u",), (j1,)))) if Pu else zero_u
            rest = lhs - rhs
            if not Mu:
                if not rest:
                    rep.witness = (s1, j1, 1, 0)
                    return rep
                continue
            uf = unit_factor(rest, Mu)
            if uf is not None:
                s2, (j2,) = uf
                if abs(j2) <= bound:
                    rep.witness = (s1, j1, s2, j2)
                    return rep
        if not Pu:
            break
    return rep


def _tpow_u(k):
    return LaurentPoly.monomial(("u",), (k,))


def _lowshift(f):
    if not f:
        return f
    return f.shift(tuple(-x for x in f.min_exponents()))


# chains of surgery unknots

def chain_exponents(c):
    """(b0, [b_j], [u_j exponent or None for affine layers])."""
    fds = [flux_data(l.p, sum(s.eps for s in l.disk_strands)) for l in c.layers]
    b0 = 1
    for fd in fds:
        b0 = b0 * fd.p_prime // igcd(b0, fd.p_prime)
    bs = [l.q * fd.k_prime * b0 // fd.p_prime for l, fd in zip(c.layers, fds)]
    g = b0
    for b in bs:
        g = igcd(g, b)
    b0 //= g
    bs = [b // g for b in bs]
    us = [None if fd.kbar == 0 else fd.k_prime * b0 // fd.p_prime for fd in fds]
    return b0, bs, us


def chain_direct(c):
    if isinstance(c, MixedDiagram):
        return alexander_direct(c)
    pres = chain_presentation(c)
    b0, bs, _ = chain_exponents(c)
    A = fox_matrix(pres, _grading(pres))
    vals = {"x": b0}
    for j, b in enumerate(bs):
        vals["ab"[j]] = b
    return AlexPoly(A.substitute(vals).minor_gcd(), "direct", {"b0": b0, "b": bs})


def chain_alexander(c):
    """Formula route for at most two surgery unknots.

    The classical matrix of L' u U1 u U2 is substituted at (t^b0, t^b1, t^b2)
    and the minor gcd divided by prod (t^(k_j' b0 / p_j') - 1) over the
    layers that L pierces with nonzero flux; a layer without piercings is a
    split summand and contributes its torsion order p_j.
    """
    if isinstance(c, MixedDiagram):
        return alexander_formula(c)
    if len(c.layers) > 2:
        raise UnsupportedChainDepth(f"{len(c.layers)} surgery layers; at most 2 are supported")
    ensure_valid(c)
    fds = [flux_data(l.p, sum(s.eps for s in l.disk_strands)) for l in c.layers]
    for l, fd in zip(c.layers, fds):
        if l.disk_strands and fd.kbar == 0:
            raise DegenerateFlux("a pierced layer with zero flux is not supported in chains")
    b0, bs, us = chain_exponents(c)
    live = [j for j, l in enumerate(c.layers) if l.disk_strands]
    sub = SurgeryChain(c.components, c.crossings, tuple(c.layers[j] for j in live),
                       c.over_sequence, c.name)
    from .presentation import _assemble
    names = ["ab"[j] for j in range(len(live))]
    pres = _assemble(sub.components, sub.crossings, [l.disk_strands for l in sub.layers], names)
    B = fox_matrix(pres, _grading(pres))
    vals = {"x": b0}
    for jj, j in enumerate(live):
        vals["ab"[jj]] = bs[j]
    g = B.substitute(vals).minor_gcd()
    den = LaurentPoly.one(("t",))
    for j in live:
        den = den * (_tpow(us[j]) - 1)
    val = _divide(g, den)
    for j, l in enumerate(c.layers):
        if not l.disk_strands:
            val = val * l.p
    return AlexPoly(val, "formula", {"b0": b0, "b": bs})
