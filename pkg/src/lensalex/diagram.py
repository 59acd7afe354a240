"""Mixed link diagrams in normal position with respect to surgery unknots.

The link L is given by its Wirtinger arcs, grouped into oriented component
cycles, its own crossings, and the ordered list of strands s_1..s_k that pass
through the spanning disk D of the round surgery unknot U. Each strand is
split by the front arc of U into an arc above D and an arc below D. Right
after piercing D a strand with eps=+1 passes over the back arc of U; a strand
with eps=-1 does so right before piercing.

Over-pass order along an arc only matters for smoothing and flipping. It may
be supplied through the optional ``over_sequence`` key (arc -> list of tokens
``c<i>`` for crossing i and ``d<i>`` for the back pass of strand i); arcs with
at most one internal over-pass need no entry.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import gcd

from .errors import AmbiguousOverOrder, DiagramError, NotInternalCrossing, ParseError


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: str
    under_in: str
    under_out: str


@dataclass(frozen=True)
class DiskStrand:
    above: str
    below: str
    eps: int


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class FluxData:
    kbar: int
    d: int
    p_prime: int
    k_prime: int


def flux_data(p, kbar):
    d = gcd(p, abs(kbar))
    return FluxData(kbar, d, p // d, kbar // d)


@dataclass(frozen=True)
class MixedDiagram:
    p: int
    q: int
    components: tuple
    crossings: tuple = ()
    disk_strands: tuple = ()
    over_sequence: dict = field(default=None, compare=False, hash=False)
    name: str = field(default="", compare=False)

    @property
    def arcs(self):
        return [a for comp in self.components for a in comp]

    @property
    def k(self):
        return len(self.disk_strands)

    def is_affine(self):
        return not self.disk_strands

    def component_of(self):
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def to_json(self):
        obj = {
            "surgery": {"p": self.p, "q": self.q},
            "components": [list(c) for c in self.components],
            "crossings": [{"sign": c.sign, "over": c.over, "under_in": c.under_in,
                           "under_out": c.under_out} for c in self.crossings],
            "disk_strands": [{"above": s.above, "below": s.below, "eps": s.eps}
                             for s in self.disk_strands],
        }
        if self.over_sequence:
            obj["over_sequence"] = {a: list(v) for a, v in self.over_sequence.items()}
        if self.name:
            obj = {"name": self.name, **obj}
        return obj

    def dumps(self, indent=1):
        return json.dumps(self.to_json(), indent=indent)

    def with_surgery(self, p, q):
        return replace(self, p=p, q=q)

    def link_only(self):
        """The same link with the surgery data removed (an affine diagram)."""
        return replace(self, disk_strands=())


@dataclass(frozen=True)
class SurgeryLayer:
    p: int
    q: int
    disk_strands: tuple


@dataclass(frozen=True)
class SurgeryChain:
    """Several round surgery unknots, each in its own normal position. The
    cylinders are pairwise disjoint, so all strands are strands of L."""
    components: tuple
    crossings: tuple
    layers: tuple
    over_sequence: dict = field(default=None, compare=False, hash=False)
    name: str = field(default="", compare=False)

    def layer_diagram(self, i):
        lay = self.layers[i]
        return MixedDiagram(lay.p, lay.q, self.components, self.crossings, lay.disk_strands,
                            self.over_sequence, self.name)

    def to_json(self):
        obj = {
            "surgery": [{"p": l.p, "q": l.q,
                         "disk_strands": [{"above": s.above, "below": s.below, "eps": s.eps}
                                          for s in l.disk_strands]} for l in self.layers],
            "components": [list(c) for c in self.components],
            "crossings": [{"sign": c.sign, "over": c.over, "under_in": c.under_in,
                           "under_out": c.under_out} for c in self.crossings],
        }
        if self.name:
            obj = {"name": self.name, **obj}
        return obj


# parsing

def _req(obj, key, kind):
    if key not in obj:
        raise ParseError(f"missing key {key!r}")
    v = obj[key]
    if kind is int and (not isinstance(v, int) or isinstance(v, bool)):
        raise ParseError(f"{key!r} must be an integer")
    if kind is list and not isinstance(v, list):
        raise ParseError(f"{key!r} must be a list")
    return v


def _arcname(v):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"arc identifiers are strings or integers, got {v!r}")
    return str(v)


def _parse_strands(lst):
    out = []
    for s in lst:
        if not isinstance(s, dict):
            raise ParseError("disk strand entries are objects")
        out.append(DiskStrand(_arcname(_req(s, "above", None)), _arcname(_req(s, "below", None)),
                              _req(s, "eps", int)))
    return tuple(out)


def _parse_common(obj):
    comps = _req(obj, "components", list)
    components = []
    for c in comps:
        if not isinstance(c, list):
            raise ParseError("each component is a list of arcs")
        components.append(tuple(_arcname(a) for a in c))
    crossings = []
    for c in obj.get("crossings", []):
        if not isinstance(c, dict):
            raise ParseError("crossing entries are objects")
        crossings.append(Crossing(_req(c, "sign", int), _arcname(_req(c, "over", None)),
                                  _arcname(_req(c, "under_in", None)),
                                  _arcname(_req(c, "under_out", None))))
    ovs = obj.get("over_sequence")
    if ovs is not None:
        if not isinstance(ovs, dict):
            raise ParseError("over_sequence must map arcs to token lists")
        ovs = {str(k): tuple(str(t) for t in v) for k, v in ovs.items()}
    return tuple(components), tuple(crossings), ovs


def from_json(obj):
    """Build a MixedDiagram (or a SurgeryChain when ``surgery`` is a list)."""
    if not isinstance(obj, dict):
        raise ParseError("diagram must be a JSON object")
    surg = _req(obj, "surgery", None)
    components, crossings, ovs = _parse_common(obj)
    name = str(obj.get("name", ""))
    if isinstance(surg, list):
        layers = []
        for lay in surg:
            if not isinstance(lay, dict):
                raise ParseError("surgery layers are objects")
            layers.append(SurgeryLayer(_req(lay, "p", int), _req(lay, "q", int),
                                       _parse_strands(lay.get("disk_strands", []))))
        if len(layers) == 1 and "disk_strands" not in obj:
            l0 = layers[0]
            return MixedDiagram(l0.p, l0.q, components, crossings, l0.disk_strands, ovs, name)
        return SurgeryChain(components, crossings, tuple(layers), ovs, name)
    if not isinstance(surg, dict):
        raise ParseError("surgery must be an object or a list of objects")
    strands = _parse_strands(obj.get("disk_strands", []))
    return MixedDiagram(_req(surg, "p", int), _req(surg, "q", int), components, crossings,
                        strands, ovs, name)


def loads(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    return from_json(obj)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    d = loads(text)
    if not getattr(d, "name", ""):
        import os
        d = replace(d, name=os.path.splitext(os.path.basename(str(path)))[0])
    return d


# validation

def _check_surgery(p, q, out, where=""):
    if p < 1:
        out.append(Violation("BadSurgery", f"{where}p must be positive, got {p}"))
    elif gcd(p, q) != 1:
        out.append(Violation("NotCoprime", f"{where}gcd({p},{q}) = {gcd(p, q)}"))


def _check_link(components, crossings, strand_sets, ovs):
    """Shared checks for the link data; strand_sets is a list of strand tuples
    (one per surgery layer)."""
    out = []
    seen = {}
    for i, comp in enumerate(components):
        if not comp:
            out.append(Violation("EmptyComponent", f"component {i} has no arcs"))
        for a in comp:
            if a in seen:
                out.append(Violation("DuplicateArc", f"arc {a} appears twice"))
            seen[a] = i
    arcs = set(seen)
    nxt = {}
    for comp in components:
        for j, a in enumerate(comp):
            nxt[a] = comp[(j + 1) % len(comp)]
    claimed = {}

    def claim(a, b, who):
        if a not in arcs or b not in arcs:
            return
        if nxt.get(a) != b:
            out.append(Violation("Orientation", f"{who}: {b} does not follow {a} in its component"))
            return
        if a in claimed:
            out.append(Violation("DoubleJunction", f"{who} and {claimed[a]} both end arc {a}"))
            return
        claimed[a] = who

    for i, c in enumerate(crossings):
        if c.sign not in (1, -1):
            out.append(Violation("BadSign", f"crossing {i} sign {c.sign}"))
        for role in ("over", "under_in", "under_out"):
            a = getattr(c, role)
            if a not in arcs:
                out.append(Violation("UnknownArc", f"crossing {i} {role} {a}"))
        claim(c.under_in, c.under_out, f"crossing {i}")
    for li, strands in enumerate(strand_sets):
        tag = f"layer {li} " if len(strand_sets) > 1 else ""
        for i, s in enumerate(strands):
            if s.eps not in (1, -1):
                out.append(Violation("BadSign", f"{tag}disk strand {i} eps {s.eps}"))
                continue
            for role in ("above", "below"):
                a = getattr(s, role)
                if a not in arcs:
                    out.append(Violation("UnknownArc", f"{tag}disk strand {i} {role} {a}"))
            if s.eps == 1:
                claim(s.below, s.above, f"{tag}disk strand {i}")
            else:
                claim(s.above, s.below, f"{tag}disk strand {i}")
    for comp in components:
        if len(comp) >= 2:
            for a in comp:
                if a not in claimed:
                    out.append(Violation("OpenArc", f"arc {a} has no terminating undercrossing"))
    if ovs:
        over_arc = {f"c{i}": c.over for i, c in enumerate(crossings)}
        if len(strand_sets) == 1:
            for i, s in enumerate(strand_sets[0]):
                over_arc[f"d{i}"] = s.above
        listed = set()
        for a, toks in ovs.items():
            if a not in arcs:
                out.append(Violation("UnknownArc", f"over_sequence names unknown arc {a}"))
                continue
            for t in toks:
                if t not in over_arc:
                    out.append(Violation("BadOverSequence", f"unknown token {t} on arc {a}"))
                elif over_arc[t] != a:
                    out.append(Violation("BadOverSequence", f"{t} does not pass over arc {a}"))
                elif t in listed:
                    out.append(Violation("BadOverSequence", f"{t} listed twice"))
                listed.add(t)
            for t, a2 in over_arc.items():
                if a2 == a and t.startswith("c") and t not in toks:
                    out.append(Violation("BadOverSequence", f"{t} missing from arc {a}"))
    return out


def validate(d):
    """Return the list of violations (empty when the diagram is valid)."""
    out = []
    if isinstance(d, SurgeryChain):
        for i, lay in enumerate(d.layers):
            _check_surgery(lay.p, lay.q, out, f"layer {i}: ")
        out.extend(_check_link(d.components, d.crossings, [l.disk_strands for l in d.layers],
                               d.over_sequence))
        return out
    _check_surgery(d.p, d.q, out)
    out.extend(_check_link(d.components, d.crossings, [d.disk_strands], d.over_sequence))
    if not out and d.over_sequence:
        try:
            to_events(d)
        except (AmbiguousOverOrder, DiagramError) as exc:
            out.append(Violation("BadOverSequence", str(exc)))
    return out


def ensure_valid(d):
    v = validate(d)
    if v:
        raise DiagramError(v)
    return d


# flux

def kbar(d):
    return sum(s.eps for s in d.disk_strands)


def flux(d):
    return flux_data(d.p, kbar(d))


def component_flux(d):
    comp = d.component_of()
    out = [0] * len(d.components)
    for s in d.disk_strands:
        out[comp[s.above]] += s.eps
    return out


# transformations

def reverse_orientation(d):
    comps = tuple((c[0],) + tuple(reversed(c[1:])) for c in d.components)
    cr = tuple(Crossing(c.sign, c.over, c.under_out, c.under_in) for c in d.crossings)
    ds = tuple(DiskStrand(s.above, s.below, -s.eps) for s in d.disk_strands)
    ovs = None
    if d.over_sequence:
        ovs = {a: tuple(reversed(v)) for a, v in d.over_sequence.items()}
    return replace(d, components=comps, crossings=cr, disk_strands=ds, over_sequence=ovs)


def reverse_components(d, which):
    """Reverse only the listed components; crossings between a reversed and a
    kept component change sign."""
    which = set(which)
    comp = d.component_of()
    comps = tuple(((c[0],) + tuple(reversed(c[1:]))) if i in which else c
                  for i, c in enumerate(d.components))
    cr = []
    for c in d.crossings:
        ru = comp[c.under_in] in which
        ro = comp[c.over] in which
        sign = -c.sign if ru != ro else c.sign
        if ru:
            cr.append(Crossing(sign, c.over, c.under_out, c.under_in))
        else:
            cr.append(Crossing(sign, c.over, c.under_in, c.under_out))
    ds = tuple(DiskStrand(s.above, s.below, -s.eps) if comp[s.above] in which else s
               for s in d.disk_strands)
    ovs = None
    if d.over_sequence:
        ovs = {a: tuple(reversed(v)) if comp[a] in which else v
               for a, v in d.over_sequence.items()}
    return replace(d, components=comps, crossings=tuple(cr), disk_strands=ds, over_sequence=ovs)


def _over_order(d):
    """Over events per arc in traversal order, as tokens."""
    per = {a: [] for a in d.arcs}
    for i, c in enumerate(d.crossings):
        per[c.over].append(f"c{i}")
    ovs = d.over_sequence or {}
    out = {}
    for a, toks in per.items():
        if a in ovs:
            listed = [t for t in ovs[a] if t.startswith("c")]
            if sorted(listed) != sorted(toks):
                raise DiagramError([Violation("BadOverSequence", f"arc {a}: {listed} vs {toks}")])
            out[a] = listed
        elif len(toks) <= 1:
            out[a] = toks
        else:
            out[a] = None
    return out


def to_events(d, need=None):
    """Cyclic event lists per component.

    Events: ('O', i) over crossing i, ('U', i) under crossing i, ('B', s) over
    the back of U for strand s, ('D', s) through the disk for strand s. Arcs
    whose over-pass order is unknown raise AmbiguousOverOrder, unless ``need``
    is given and the arc is not in it.
    """
    order = _over_order(d)
    junction_end = {}
    for i, c in enumerate(d.crossings):
        junction_end[c.under_in] = ("U", i)
    for s_i, s in enumerate(d.disk_strands):
        junction_end[s.below if s.eps == 1 else s.above] = ("D", s_i)
    starts_after_disk = {}
    for s_i, s in enumerate(d.disk_strands):
        starts_after_disk.setdefault(s.above, []).append(s_i)
    cycles = []
    names = {}
    loose = {}
    for ci, comp in enumerate(d.components):
        ev = []
        for a in comp:
            ov = order[a]
            if ov is None:
                if need is None or a in need:
                    raise AmbiguousOverOrder(f"arc {a} carries several over-passes; give over_sequence")
                ov = sorted(t for t in (f"c{i}" for i, c in enumerate(d.crossings)) if d.crossings[int(t[1:])].over == a)
            body = [("O", int(t[1:])) for t in ov]
            # back passes of U on this arc
            for s_i, s in enumerate(d.disk_strands):
                if s.above == a:
                    if s.eps == 1:
                        body.insert(0, ("B", s_i))
                    else:
                        body.append(("B", s_i))
            if len([s for s in d.disk_strands if s.above == a]) > 1:
                # an arc above D for two strands: ordering of back passes follows strand order
                pass
            ev.extend(body)
            j = junction_end.get(a)
            if j is not None:
                ev.append(j)
                names[j] = comp[(comp.index(a) + 1) % len(comp)]
        if not any(e[0] in ("U", "D") for e in ev):
            loose[ci] = comp[0]
        cycles.append(ev)
    signs = [c.sign for c in d.crossings]
    eps = [s.eps for s in d.disk_strands]
    return cycles, signs, eps, names, loose


def from_events(p, q, cycles, signs, eps, names=None, loose=None, name="", keep_order=True):
    """Rebuild a MixedDiagram from event cycles.

    ``names`` maps a junction event to the name of the arc that starts after
    it; ``loose`` maps a cycle index (a cycle without junctions) to a name.
    Missing names are generated.
    """
    names = dict(names or {})
    loose = dict(loose or {})
    used = set(names.values()) | set(loose.values())
    counter = [0]

    def fresh():
        while True:
            counter[0] += 1
            cand = f"e{counter[0]}"
            if cand not in used:
                used.add(cand)
                return cand

    components = []
    over_arc = {}
    back_arc = {}
    before = {}
    after = {}
    seqs = {}
    for ci, ev in enumerate(cycles):
        js = [i for i, e in enumerate(ev) if e[0] in ("U", "D")]
        if not js:
            nm = loose.get(ci) or fresh()
            components.append((nm,))
            seqs[nm] = []
            for e in ev:
                if e[0] == "O":
                    over_arc[e[1]] = nm
                else:
                    back_arc[e[1]] = nm
                seqs[nm].append(e)
            continue
        # rotate so the cycle starts right after a junction
        start = js[-1] + 1
        ev = ev[start:] + ev[:start]
        comp = []
        first_j = ev[-1]
        cur = names.get(first_j)
        if cur is None:
            cur = fresh()
            names[first_j] = cur
        for e in ev:
            if cur not in seqs:
                seqs[cur] = []
                comp.append(cur)
            if e[0] in ("O", "B"):
                (over_arc if e[0] == "O" else back_arc)[e[1]] = cur
                seqs[cur].append(e)
            else:
                before[e] = cur
                nm = names.get(e)
                if nm is None:
                    nm = fresh()
                    names[e] = nm
                after[e] = nm
                cur = nm
        components.append(tuple(comp))
    crossings = []
    for i, s in enumerate(signs):
        crossings.append(Crossing(s, over_arc[i], before[("U", i)], after[("U", i)]))
    strands = []
    for i, e in enumerate(eps):
        a, b = before[("D", i)], after[("D", i)]
        strands.append(DiskStrand(b, a, 1) if e == 1 else DiskStrand(a, b, -1))
    ovs = {}
    for a, seq in seqs.items():
        toks = [f"c{e[1]}" if e[0] == "O" else f"d{e[1]}" for e in seq]
        if keep_order and sum(1 for t in toks if t[0] == "c") > 1:
            ovs[a] = tuple(toks)
    return MixedDiagram(p, q, tuple(components), tuple(crossings), tuple(strands), ovs or None, name)


def flip_crossing(d, i):
    if not 0 <= i < len(d.crossings):
        raise NotInternalCrossing(f"crossing index {i} out of range")
    c = d.crossings[i]
    cycles, signs, eps, names, loose = to_events(d, need={c.over})
    new = []
    for ev in cycles:
        new.append([("U", i) if e == ("O", i) else ("O", i) if e == ("U", i) else e for e in ev])
    signs = list(signs)
    signs[i] = -signs[i]
    # the old junction name goes to the arc that now starts after the under pass
    nm = names.pop(("U", i), None)
    names = {k: v for k, v in names.items()}
    if nm is not None:
        names[("U", i)] = nm
    return from_events(d.p, d.q, new, signs, eps, names, loose, d.name)


def smooth_crossing(d, i):
    """Oriented smoothing of internal crossing i."""
    if not 0 <= i < len(d.crossings):
        raise NotInternalCrossing(f"crossing index {i} out of range")
    c = d.crossings[i]
    cycles, signs, eps, names, loose = to_events(d, need={c.over})
    loc = {}
    for ci, ev in enumerate(cycles):
        for j, e in enumerate(ev):
            if e in (("U", i), ("O", i)):
                loc[e[0]] = (ci, j)
    (cu, ju), (co, jo) = loc["U"], loc["O"]
    old_name = names.pop(("U", i), None)
    if cu == co:
        ev = cycles[cu]
        n = len(ev)
        # rotate so the under pass is at index 0
        rot = ev[ju:] + ev[:ju]
        k = (jo - ju) % n
        x_part = rot[1:k]
        y_part = rot[k + 1:]
        pieces = [x_part, y_part]
        rest = [cy for idx, cy in enumerate(cycles) if idx != cu]
        new_cycles = rest + pieces
    else:
        a = cycles[cu]
        b = cycles[co]
        ra = a[ju + 1:] + a[:ju]
        rb = b[jo + 1:] + b[:jo]
        merged = ra + rb
        rest = [cy for idx, cy in enumerate(cycles) if idx not in (cu, co)]
        new_cycles = rest + [merged]
    # reindex crossings > i
    def rn(e):
        if e[0] in ("U", "O") and e[1] > i:
            return (e[0], e[1] - 1)
        return e
    new_cycles = [[rn(e) for e in ev] for ev in new_cycles]
    names = {rn(k): v for k, v in names.items()}
    signs = [s for j, s in enumerate(signs) if j != i]
    new_loose = {}
    for ci, ev in enumerate(new_cycles):
        if not any(e[0] in ("U", "D") for e in ev):
            cand = old_name if old_name and old_name not in names.values() else None
            new_loose[ci] = cand or f"{c.over}~{ci}"
            if cand:
                old_name = None
    return from_events(d.p, d.q, new_cycles, signs, eps, names, new_loose, d.name)


def crossing_components(d, i):
    comp = d.component_of()
    c = d.crossings[i]
    return comp[c.over], comp[c.under_in]


def writhe(d):
    return sum(c.sign for c in d.crossings)
