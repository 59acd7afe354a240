"""Link group presentations built from mixed diagrams.

Generator order: x1..xk are the arcs above the disk (one slot per strand),
x(k+1)..x(2k) the arcs below it, then the remaining arcs of L, then the arcs
a1..ak of the surgery unknot (a1 is its front arc, passing over every strand).
An arc that fills several slots keeps one generator per slot plus an
identification relator; everywhere else an arc is named by its first slot.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import MixedDiagram, SurgeryChain, ensure_valid
from .errors import UnsupportedChainDepth
from .freegroup import Word

TAGS = ("wirtinger", "u_over", "u_under", "lens", "identification")


@dataclass
class Presentation:
    generators: list
    relators: list  # (Word, tag)
    gen_arc: dict = field(default_factory=dict)  # generator -> arc id or ("U", layer, j)
    arc_gen: dict = field(default_factory=dict)  # arc id -> canonical generator
    layers: list = field(default_factory=list)  # per surgery layer: names of its a-generators
    strand_slots: list = field(default_factory=list)  # per layer: [(above gen, below gen, eps)]

    def l_generators(self):
        return [g for g in self.generators if not isinstance(self.gen_arc.get(g), tuple)]

    def u_generators(self, layer=None):
        if layer is None:
            return [g for lay in self.layers for g in lay]
        return list(self.layers[layer])

    def tagged(self, tag):
        return [w for w, t in self.relators if t == tag]

    def without(self, tag):
        return Presentation(list(self.generators), [(w, t) for w, t in self.relators if t != tag],
                            dict(self.gen_arc), dict(self.arc_gen), [list(l) for l in self.layers],
                            [list(s) for s in self.strand_slots])

    def dump(self):
        lines = ["gens: " + " ".join(self.generators)]
        for w, t in self.relators:
            lines.append(f"rel[{t}]: {w}")
        return "\n".join(lines)

    def __str__(self):
        return self.dump()


def _letter(g, e=1):
    return Word.gen(g, e)


def wirtinger_relator(sign, out, over, inn):
    if sign == 1:
        return _letter(out) * _letter(over) * _letter(inn, -1) * _letter(over, -1)
    return _letter(out) * _letter(over, -1) * _letter(inn, -1) * _letter(over)


def _assemble(components, crossings, layer_strands, u_names):
    """Shared builder; layer_strands is a list of strand tuples per layer."""
    slots = []
    for strands in layer_strands:
        slots.extend(s.above for s in strands)
        slots.extend(s.below for s in strands)
    placed = set(slots)
    for comp in components:
        for a in comp:
            if a not in placed:
                slots.append(a)
                placed.add(a)
    gens = [f"x{i + 1}" for i in range(len(slots))]
    gen_arc = dict(zip(gens, slots))
    arc_gen = {}
    for g, a in zip(gens, slots):
        arc_gen.setdefault(a, g)
    relators = []
    for c in crossings:
        relators.append((wirtinger_relator(c.sign, arc_gen[c.under_out], arc_gen[c.over],
                                           arc_gen[c.under_in]), "wirtinger"))
    layers = []
    strand_slots = []
    base = 0
    for li, strands in enumerate(layer_strands):
        k = len(strands)
        pre = u_names[li]
        ugens = [f"{pre}{j + 1}" for j in range(max(k, 1))]
        for j, g in enumerate(ugens):
            gen_arc[g] = ("U", li, j + 1)
        layers.append(ugens)
        a1 = ugens[0]
        slot = []
        for i, s in enumerate(strands, start=1):
            xi = gens[base + i - 1]
            xki = gens[base + k + i - 1]
            e = s.eps
            slot.append((xi, xki, e))
            relators.append((_letter(a1) * _letter(xki, e) * _letter(a1, -1) * _letter(xi, -e),
                             "u_over"))
        for i, s in enumerate(strands, start=1):
            xi = gens[base + i - 1]
            e = s.eps
            ain = ugens[k - i]
            j_out = (k - i + 2) % k or k
            aout = ugens[j_out - 1]
            relators.append((_letter(xi, e) * _letter(ain) * _letter(xi, -e) * _letter(aout, -1),
                             "u_under"))
        strand_slots.append(slot)
        base += 2 * k
    for a in arc_gen:
        first = arc_gen[a]
        for g in gens:
            if gen_arc[g] == a and g != first:
                relators.append((_letter(first) * _letter(g, -1), "identification"))
    generators = gens + [g for lay in layers for g in lay]
    return Presentation(generators, relators, gen_arc, arc_gen, layers, strand_slots)


def meridian_word(pres, layer=0):
    w = Word()
    for xi, _, e in pres.strand_slots[layer]:
        w = w * _letter(xi, e)
    return w


def lens_relator(pres, p, q, layer=0):
    a1 = pres.layers[layer][0]
    w = Word.gen(a1, p)
    if pres.strand_slots[layer]:
        w = w * meridian_word(pres, layer) ** (-q)
    return w


def wirtinger_s3(d):
    """Presentation of the complement of L and the surgery unknot in S^3."""
    ensure_valid(d)
    return _assemble(d.components, d.crossings, [d.disk_strands], ["a"])


def lens_presentation(d):
    pres = wirtinger_s3(d)
    pres.relators.append((lens_relator(pres, d.p, d.q), "lens"))
    return pres


def _layer_prefix(i):
    return "ab"[i] if i < 2 else f"u{i + 1}_"


def chain_presentation(c):
    if isinstance(c, MixedDiagram):
        return lens_presentation(c)
    if len(c.layers) > 2:
        raise UnsupportedChainDepth(f"{len(c.layers)} surgery layers; at most 2 are supported")
    ensure_valid(c)
    names = [_layer_prefix(i) for i in range(len(c.layers))]
    pres = _assemble(c.components, c.crossings, [l.disk_strands for l in c.layers], names)
    for i, lay in enumerate(c.layers):
        pres.relators.append((lens_relator(pres, lay.p, lay.q, i), "lens"))
    return pres


def classical_presentation(components, crossings):
    """Wirtinger presentation of a link in S^3 given by arcs and crossings only."""
    return _assemble(components, crossings, [], [])
