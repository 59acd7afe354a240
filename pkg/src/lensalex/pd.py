"""Planar diagram (PD) codes for the classical link L u U.

PD tuples follow the KnotTheory convention: (a, b, c, d) lists the four edge
labels counterclockwise starting from the incoming under edge. The over
strand runs d -> b at a positive crossing and b -> d at a negative one.

``to_pd`` draws U as the round unknot of the normal form: its front arc
passes over the strands left to right, it then passes under their upper
parts from right to left. ``from_pd`` goes the other way for a PD code in
which one component already sits in that position.
"""
from __future__ import annotations

from .diagram import MixedDiagram, ensure_valid, from_events, to_events
from .errors import DiagramError, ParseError, PreconditionError


def _tuple(sign, under_in, under_out, over_in, over_out):
    if sign > 0:
        return (under_in, over_out, under_out, over_in)
    return (under_in, over_in, under_out, over_out)


def to_pd(d):
    """PD code of L u U (U is the last component). Needs k >= 1 and every
    component of L to carry at least one crossing."""
    ensure_valid(d)
    if d.is_affine():
        raise PreconditionError("an affine diagram has U split off; no PD code for L u U")
    cycles, signs, eps, _, _ = to_events(d)
    k = len(eps)
    u_cycle = [("D", s) for s in range(k)] + [("B", s) for s in reversed(range(k))]
    # visits: event -> (in edge, out edge), per strand role
    label = 0
    l_vis, u_vis = {}, {}
    for cyc, store in [(c, l_vis) for c in cycles] + [(u_cycle, u_vis)]:
        if not cyc:
            raise PreconditionError("a component without crossings cannot be written as PD")
        n = len(cyc)
        for j, e in enumerate(cyc):
            store[e] = (label + (j - 1) % n, label + j)
        label += n
    out = []
    for i, s in enumerate(signs):
        ui, uo = l_vis[("U", i)]
        oi, oo = l_vis[("O", i)]
        out.append(_tuple(s, ui, uo, oi, oo))
    for s, e in enumerate(eps):
        # disk pass: L under U; back pass: L over U; both have sign eps
        ui, uo = l_vis[("D", s)]
        oi, oo = u_vis[("D", s)]
        out.append(_tuple(e, ui, uo, oi, oo))
        ui, uo = u_vis[("B", s)]
        oi, oo = l_vis[("B", s)]
        out.append(_tuple(e, ui, uo, oi, oo))
    return out


def parse_pd(text):
    """Read a PD code written as a Python/JSON-like list of 4-tuples, or in
    KnotTheory form PD[X[1,5,2,4], ...]."""
    import ast
    import re
    t = text.strip()
    if t.startswith("PD["):
        t = "[" + re.sub(r"X\[", "(", t[3:-1]).replace("]", ")") + "]"
    try:
        v = ast.literal_eval(t)
    except (ValueError, SyntaxError) as e:
        raise ParseError(f"cannot read PD code: {e}") from None
    try:
        pd = [tuple(int(x) for x in c) for c in v]
    except TypeError:
        raise ParseError("PD code must be a list of 4-tuples") from None
    if any(len(c) != 4 for c in pd):
        raise ParseError("every PD crossing needs exactly four labels")
    return pd


def pd_components(pd):
    """Oriented components of a PD code.

    Returns (components, signs); each component is a list of visits
    (crossing index, 'over' | 'under'). Under strands fix the orientation;
    a component that only passes over is oriented by increasing labels.
    """
    ends = {}
    for x, c in enumerate(pd):
        for slot, e in enumerate(c):
            ends.setdefault(e, []).append((x, slot))
    if any(len(v) != 2 for v in ends.values()):
        raise ParseError("every PD label must occur exactly twice")

    def other(x, slot):
        a, b = ends[pd[x][slot]]
        return b if a == (x, slot) else a

    entry = {}
    comps = []

    def walk(x, slot):
        comp = []
        while (x, slot) not in entry:
            entry[(x, slot)] = len(comps)
            comp.append((x, "under" if slot % 2 == 0 else "over"))
            x, slot = other(x, (slot + 2) % 4)
        comps.append(comp)

    for x in range(len(pd)):
        if (x, 0) not in entry:
            walk(x, 0)
    for x, (a, b, c, d) in enumerate(pd):
        if (x, 1) in entry or (x, 3) in entry:
            continue
        # KnotTheory labels increase along the over strand
        walk(x, 1 if (d - b == 1 or b - d > 1) else 3)
    signs = [0] * len(pd)
    for (x, slot) in entry:
        if slot == 3:
            signs[x] = 1
        elif slot == 1:
            signs[x] = -1
    return comps, signs


def from_pd(pd, p, q, u=None, name=""):
    """Mixed diagram from a PD code of L u U in normal position.

    ``u`` is the index of U among ``pd_components`` (default: the unique
    component without self-crossings whose visits read O^k N^k). Along U the
    k over-passes must be followed by k under-passes, and the strand under
    the i-th over-pass must reach U next at the matching under-pass.
    """
    comps, signs = pd_components(pd)
    cands = range(len(comps)) if u is None else [u]
    last = None
    for ui in cands:
        try:
            return _from_pd(pd, comps, signs, ui, p, q, name)
        except DiagramError as e:
            last = e
    raise last if last else DiagramError([])


def _bad(msg):
    from .diagram import Violation
    return DiagramError([Violation("NotNormal", msg)])


def _from_pd(pd, comps, signs, ui, p, q, name):
    useq = comps[ui]
    xs = [x for x, _ in useq]
    if len(set(xs)) != len(xs):
        raise _bad("U has self-crossings")
    kinds = "".join("O" if r == "over" else "N" for _, r in useq)
    k = kinds.count("O")
    if k == 0 or kinds.count("N") != k:
        raise _bad("U must pass over and under equally often")
    rot = next((r for r in range(len(kinds)) if (kinds[r:] + kinds[:r]) == "O" * k + "N" * k), None)
    if rot is None:
        raise _bad(f"U reads {kinds}, not O^k N^k")
    useq = useq[rot:] + useq[:rot]
    fronts = [x for x, _ in useq[:k]]
    backs = [x for x, _ in useq[k:]][::-1]
    lcomps = [c for i, c in enumerate(comps) if i != ui]
    strand_of = {x: s for s, x in enumerate(fronts)}
    strand_of.update({x: s for s, x in enumerate(backs)})
    # consecutive visits along L around each strand
    eps = [None] * k
    for comp in lcomps:
        n = len(comp)
        for j, (x, _) in enumerate(comp):
            if x in strand_of and x in fronts:
                s = strand_of[x]
                if comp[(j + 1) % n][0] == backs[s]:
                    eps[s] = 1
                elif comp[(j - 1) % n][0] == backs[s]:
                    eps[s] = -1
    if None in eps:
        raise _bad("a strand through U does not go straight from the front to the back")
    flip = None
    for s in range(k):
        side = signs[fronts[s]] == eps[s] and signs[backs[s]] == eps[s]
        mirrored = signs[fronts[s]] == -eps[s] and signs[backs[s]] == -eps[s]
        if not (side or mirrored):
            raise _bad("inconsistent crossing signs at U")
        if flip is None:
            flip = mirrored
        elif flip != mirrored:
            raise _bad("strands leave U on both sides")
    if flip:
        # view the diagram from below: over and under swap, signs stay
        comps = [[(x, "under" if r == "over" else "over") for x, r in c] for c in comps]
        return _from_pd(pd, comps, signs, ui, p, q, name)
    u_set = set(fronts) | set(backs)
    index = {}
    for x in range(len(pd)):
        if x not in u_set:
            index[x] = len(index)
    cycles = []
    for comp in lcomps:
        ev = []
        for x, r in comp:
            if x in u_set:
                s = strand_of[x]
                ev.append(("D", s) if x == fronts[s] else ("B", s))
            else:
                ev.append(("O" if r == "over" else "U", index[x]))
        cycles.append(ev)
    lsigns = [signs[x] for x in sorted(index, key=index.get)]
    d = from_events(p, q, cycles, lsigns, eps, name=name)
    ensure_valid(d)
    return d


def linking_matrix(pd):
    comps, signs = pd_components(pd)
    where = {}
    for ci, comp in enumerate(comps):
        for x, r in comp:
            where.setdefault(x, []).append(ci)
    r = len(comps)
    m = [[0] * r for _ in range(r)]
    for x, cs in where.items():
        a, b = cs
        if a != b:
            m[a][b] += signs[x]
            m[b][a] += signs[x]
    return [[v // 2 for v in row] for row in m]


def pd_presentation(pd):
    """Wirtinger presentation with one generator per PD edge; the two edges
    of each over strand are identified by an extra relator."""
    from .freegroup import Word
    from .presentation import Presentation, wirtinger_relator
    comps, signs = pd_components(pd)
    labels = sorted({e for c in pd for e in c})
    gens = [f"e{e}" for e in labels]
    rels = []
    for x, (a, b, c, d) in enumerate(pd):
        o_in, o_out = (d, b) if signs[x] > 0 else (b, d)
        rels.append((Word.gen(f"e{o_in}") * Word.gen(f"e{o_out}").inverse(), "ident"))
        rels.append((wirtinger_relator(signs[x], f"e{c}", f"e{o_in}", f"e{a}"), "wirt"))
    return Presentation(gens, rels)


def pd_alexander(pd, variables=None):
    """Classical Alexander polynomial of a PD link, one variable per
    component (names from ``variables``, default t1, t2, ...)."""
    from .algebra import LaurentPoly
    from .alexander import fox_matrix
    comps, _ = pd_components(pd)
    vars = tuple(variables or (f"t{i + 1}" for i in range(len(comps))))
    if len(vars) != len(comps):
        raise ValueError(f"{len(comps)} components but variables {vars}")
    comp_of_edge = {}
    for ci, comp in enumerate(comps):
        for x, r in comp:
            slots = (0, 2) if r == "under" else (1, 3)
            for s in slots:
                comp_of_edge[pd[x][s]] = ci
    pres = pd_presentation(pd)
    assign = {g: LaurentPoly.var(vars[comp_of_edge[int(g[1:])]], vars) for g in pres.generators}
    return fox_matrix(pres, assign).minor_gcd()


def mirror_pd(pd):
    """PD code of the mirror image: every crossing changes over and under."""
    _, signs = pd_components(pd)
    out = []
    for (a, b, c, d), s in zip(pd, signs):
        # the old over strand is the new under strand; start at its inflow
        out.append((d, a, b, c) if s > 0 else (b, c, d, a))
    return out
