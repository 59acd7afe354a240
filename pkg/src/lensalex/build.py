"""Small constructors for mixed diagrams used by the corpus and the tests."""
from __future__ import annotations

from .diagram import from_events, reverse_components


def braid_events(word, n, axis=True):
    """Event cycles for the closure of a braid on n strands.

    ``word`` lists generators as +-j (1 <= j < n), read bottom to top with all
    strands oriented upwards. With ``axis`` the surgery unknot encircles the
    braid just below the first letter, so strand i of the disk sits at braid
    position i. For a positive letter the strand moving right is over.
    """
    for g in word:
        if g == 0 or abs(g) >= n:
            raise ValueError(f"bad braid letter {g} for {n} strands")
    signs = [1 if g > 0 else -1 for g in word]
    # follow each strand through one pass of the braid
    passes = {}
    for start in range(1, n + 1):
        pos = start
        ev = [("D", start - 1), ("B", start - 1)] if axis else []
        for ci, g in enumerate(word):
            j = abs(g)
            if pos == j:
                ev.append(("O", ci) if g > 0 else ("U", ci))
                pos = j + 1
            elif pos == j + 1:
                ev.append(("U", ci) if g > 0 else ("O", ci))
                pos = j
        passes[start] = (ev, pos)
    cycles = []
    seen = set()
    for start in range(1, n + 1):
        if start in seen:
            continue
        ev = []
        pos = start
        while pos not in seen:
            seen.add(pos)
            e, pos = passes[pos]
            ev.extend(e)
        cycles.append(ev)
    eps = [1] * n if axis else []
    return cycles, signs, eps


def braid_closure(word, n, p=1, q=0, axis=True, reverse=(), name=""):
    cycles, signs, eps = braid_events(word, n, axis)
    d = from_events(p, q, cycles, signs, eps, name=name)
    if reverse:
        d = reverse_components(d, reverse)
    return d


def pierce(cycles, signs, p, q, at, eps=1, name=""):
    """Add a small surgery unknot around one point of a classical diagram.

    ``at`` = (component, position): the piercing goes in before the event
    with that index.
    """
    ci, pos = at
    cycles = [list(c) for c in cycles]
    pair = [("D", 0), ("B", 0)] if eps == 1 else [("B", 0), ("D", 0)]
    cycles[ci][pos:pos] = pair
    return from_events(p, q, cycles, signs, [eps], name=name)


def unlink_through(k, p, q, name=""):
    """k unknotted circles, each passing once upwards through the disk."""
    return braid_closure([], k, p, q, name=name) if k else None


def chain_from_events(surgeries, cycles, signs, eps, layer_of, name=""):
    """Two or more surgery unknots. ``eps`` lists every disk strand (events
    ('D', i) / ('B', i) use this global index) and ``layer_of[i]`` says which
    unknot strand i passes through; ``surgeries`` is [(p, q), ...]."""
    from .diagram import SurgeryChain, SurgeryLayer
    flat = from_events(1, 0, cycles, signs, eps)
    layers = []
    for li, (p, q) in enumerate(surgeries):
        strands = tuple(s for i, s in enumerate(flat.disk_strands) if layer_of[i] == li)
        layers.append(SurgeryLayer(p, q, strands))
    return SurgeryChain(flat.components, flat.crossings, tuple(layers), None, name)
