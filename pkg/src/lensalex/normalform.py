"""Put a PD diagram of L u U into normal position with respect to U.

U must have no self-crossings. Its projection bounds a disk region R; the
spanning disk D of U is laid flat over R at height 0 while L sits at height
+1 where it passes over and -1 where it passes under. Every edge of L inside
R whose ends have opposite heights then meets D once. Each such piercing is
pushed along a path of faces inside R to one target face F, dragging a thin
finger of L behind it: finger i runs at heights +-eta_i with eta_1 > eta_2 >
..., so a later finger may pass through earlier ones. Inside F the tips are
lined up left to right and a small ellipse around them becomes the new round
U; the upper leg of every finger winds around the right end of the ellipse so
that only lower tips lie between its two legs.

Faces are drawn as unit disks with their boundary edges as consecutive arcs.
Fingers cross faces along straight chords; inside F the legs are spirals
r = 1 - c*s, theta linear in s, so two legs meet exactly where their angles
agree mod 2*pi at equal s.
"""
from __future__ import annotations

import math
from collections import deque

from .diagram import ensure_valid, from_events
from .errors import PreconditionError
from .pd import pd_components

_R_END = 0.62
_R_ROW = 0.6


class _Map:
    """Edges and faces of a PD code; faces keep the face on their left."""

    def __init__(self, pd):
        self.pd = pd
        self.comps, self.signs = pd_components(pd)
        ends = {}
        for x, c in enumerate(pd):
            for s, e in enumerate(c):
                ends.setdefault(e, []).append((x, s))
        self.ends = ends
        self.edges = {}  # label -> dict
        self.visit_edge = {}
        for ci, comp in enumerate(self.comps):
            n = len(comp)
            for j, (x, role) in enumerate(comp):
                s_in = 0 if role == "under" else (3 if self.signs[x] > 0 else 1)
                s_out = (s_in + 2) % 4
                lab = pd[x][s_out]
                head = self.other((x, s_out))
                self.edges[lab] = {"comp": ci, "after": j, "tail": (x, s_out), "head": head,
                                   "tail_visit": (ci, j), "head_visit": (ci, (j + 1) % n)}
                self.visit_edge[(ci, j)] = lab
        self.face_of = {}
        self.faces = []
        for x in range(len(pd)):
            for s in range(4):
                if (x, s) in self.face_of:
                    continue
                f = []
                dart = (x, s)
                while dart not in self.face_of:
                    self.face_of[dart] = len(self.faces)
                    f.append(dart)
                    y, t = self.other(dart)
                    dart = (y, (t - 1) % 4)
                self.faces.append(f)

    def other(self, dart):
        a, b = self.ends[self.pd[dart[0]][dart[1]]]
        return b if a == dart else a

    def label(self, dart):
        return self.pd[dart[0]][dart[1]]

    def sides(self, lab):
        """(face, side index, forward) for both sides of an edge."""
        e = self.edges[lab]
        out = []
        for dart, fw in ((e["tail"], True), (e["head"], False)):
            f = self.face_of[dart]
            out.append((f, self.faces[f].index(dart), fw))
        return out


def _angle(m, side, frac):
    return 2 * math.pi * (side + frac) / m


def _pt(a, r=1.0):
    return (r * math.cos(a), r * math.sin(a))


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _seg_hit(p1, p2, p3, p4):
    """Parameters (s, t) where p1p2 meets p3p4 in their interiors, or None."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = _cross(d1, d2)
    if abs(den) < 1e-15:
        return None
    w = (p3[0] - p1[0], p3[1] - p1[1])
    s = _cross(w, d2) / den
    t = _cross(w, d1) / den
    eps = 1e-12
    if eps < s < 1 - eps and eps < t < 1 - eps:
        return s, t
    return None


def _side(m, lab, f):
    sd = [x for x in m.sides(lab) if x[0] == f]
    if len(sd) != 1:
        raise PreconditionError(f"edge {lab} has face {f} on both sides; the diagram is not connected enough")
    return sd[0]


def normalize(pd, p, q, u=None, side=None, keep_orientation=False, name=""):
    """Mixed diagram in normal form for the link given by ``pd``.

    ``u`` is the index of the surgery component in ``pd_components(pd)``
    (default: the only component without self-crossings, or the shorter one
    if there are several). ``side`` in {0, 1} picks which complementary region
    of U carries the disk; by default both are tried and the smaller result
    is kept. The new U is oriented as the boundary of its disk, so on one of
    the two sides its orientation (and the sign of every linking number with
    it) is reversed; ``keep_orientation`` rules that side out.
    """
    m = _Map(pd)
    comps = m.comps
    if u is None:
        cands = []
        for ci, comp in enumerate(comps):
            xs = [x for x, _ in comp]
            if len(set(xs)) == len(xs) and len(comps) > 1:
                cands.append((len(comp), ci))
        if not cands:
            raise PreconditionError("no component without self-crossings to use as U")
        u = min(cands)[1]
    xs = [x for x, _ in comps[u]]
    if len(set(xs)) != len(xs):
        raise PreconditionError("the surgery component must have no self-crossings")
    sides = [side] if side is not None else [0, 1]
    if keep_orientation:
        sides = [sd for sd in sides if _left_side(m, u) == sd]
        if not sides:
            raise PreconditionError("that side reverses the orientation of U")
    best = None
    for sd in sides:
        d = _build(m, u, sd, p, q, name)
        size = (len(d.crossings), len(d.disk_strands))
        if best is None or size < best[0]:
            best = (size, d)
    return best[1]


def _regions(m, u):
    """The two face classes cut out by U, as sorted lists of face indices."""
    u_edges = {lab for lab, e in m.edges.items() if e["comp"] == u}
    parent = list(range(len(m.faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for lab, e in m.edges.items():
        if lab in u_edges:
            continue
        (fa, _, _), (fb, _, _) = m.sides(lab)
        parent[find(fa)] = find(fb)
    classes = sorted({find(f) for f in range(len(m.faces))})
    if len(classes) != 2:
        raise PreconditionError("U does not separate the diagram into two regions")
    return [sorted(f for f in range(len(m.faces)) if find(f) == c) for c in classes]


def _left_side(m, u):
    """Index of the region on the left of U (faces are traced keeping the
    face on the left of each dart)."""
    lab = next(lab for lab, e in m.edges.items() if e["comp"] == u)
    f = m.face_of[m.edges[lab]["tail"]]
    return 0 if f in _regions(m, u)[0] else 1


def _build(m, u, side, p, q, name):
    pd = m.pd
    u_x = {x for x, _ in m.comps[u]}
    region = set(_regions(m, u)[side])

    def height(ci, j):
        x, role = m.comps[ci][j]
        return 1 if role == "over" else -1

    inside = {}
    for lab, e in m.edges.items():
        if e["comp"] == u:
            continue
        (fa, _, _), _ = m.sides(lab)
        if fa in region:
            inside[lab] = (height(*e["tail_visit"]), height(*e["head_visit"]))
    piercing = [lab for lab, (a, b) in inside.items() if a != b]
    if not piercing:
        # U bounds a disk missing L: the affine diagram of L alone
        return _assemble(m, u, u_x, p, q, name, [], {}, {}, {}, [], 0, [])

    # dual graph inside the region, through L edges only
    adj = {f: [] for f in region}
    for lab in inside:
        (fa, ia, _), (fb, ib, _) = m.sides(lab)
        adj[fa].append((fb, lab))
        adj[fb].append((fa, lab))

    def bfs(src):
        dist = {src: 0}
        prev = {}
        dq = deque([src])
        while dq:
            f = dq.popleft()
            for g, lab in adj[f]:
                if g not in dist:
                    dist[g] = dist[f] + 1
                    prev[g] = (f, lab)
                    dq.append(g)
        return dist, prev

    trees = {f: bfs(f) for f in region}
    # target face: least total path length
    def cost(F):
        dist = trees[F][0]
        return sum(min(dist[f] for f, _, _ in m.sides(lab)) for lab in piercing)

    F = min(sorted(region), key=cost)
    distF, prevF = trees[F]
    ribbons = []
    for lab in piercing:
        f0 = min((f for f, _, _ in m.sides(lab)), key=lambda f: distF[f])
        path = [f0]
        crossed = []
        f = f0
        while f != F:
            # prevF is rooted at F, so walk towards the root
            g, el = prevF[f]
            crossed.append(el)
            path.append(g)
            f = g
        ribbons.append({"edge": lab, "path": path, "crossed": crossed})

    # parameters along edges: one slot per ribbon crossing or start
    slots = {}
    for ri, r in enumerate(ribbons):
        slots.setdefault(r["edge"], []).append((ri, "start"))
        for step, el in enumerate(r["crossed"]):
            slots.setdefault(el, []).append((ri, step))
    upos = {}
    delta = {}
    for lab, lst in slots.items():
        n = len(lst)
        for idx, key in enumerate(lst):
            upos[(lab, key)] = (idx + 1) / (n + 1)
        delta[lab] = 0.25 / (n + 1)

    # legs: 0 = the leg that leaves first along the orientation of L
    for ri, r in enumerate(ribbons):
        lab = r["edge"]
        pi = upos[(lab, (ri, "start"))]
        r["pi"] = pi
        ht, hh = inside[lab]
        r["hsign"] = (ht, hh)  # out leg on the tail side
        # inward from side g the left leg is the clockwise one; the out leg
        # sits at pi - delta, which is clockwise iff f0 runs along g forward
        r["out_left"] = _side(m, lab, r["path"][0])[2]

    # boundary points of every leg on every crossed side: u params
    # leg key: (ri, 0 or 1); left/right: out leg left iff out_left
    def leg_is_left(ri, leg):
        return ribbons[ri]["out_left"] == (leg == 0)

    cross_u = {}  # (ri, step) -> {leg: u}
    for ri, r in enumerate(ribbons):
        for step, el in enumerate(r["crossed"]):
            fa = r["path"][step]
            c = upos[(el, (ri, step))]
            dl = delta[el]
            # exit side of fa: the left leg is further along fa's traversal
            fw = _side(m, el, fa)[2]
            r.setdefault("fw", {})[step] = fw
            left_u = c + dl if fw else c - dl
            right_u = c - dl if fw else c + dl
            cross_u[(ri, step)] = {leg: (left_u if leg_is_left(ri, leg) else right_u) for leg in (0, 1)}
        pi, dl = r["pi"], delta[r["edge"]]
        r["start_u"] = {0: pi - dl, 1: pi + dl}

    # geometry per face: for each ribbon leg, its entry and exit chart points
    def chart_point(f, lab, uval):
        _, i, fw = _side(m, lab, f)
        frac = uval if fw else 1 - uval
        return _angle(len(m.faces[f]), i, frac)

    legs_in_face = {}  # face -> list of (ri, leg, a_in or None, a_out or None, step index)
    for ri, r in enumerate(ribbons):
        for k, f in enumerate(r["path"]):
            for leg in (0, 1):
                if k == 0:
                    a_in = chart_point(f, r["edge"], r["start_u"][leg])
                else:
                    a_in = chart_point(f, r["crossed"][k - 1], cross_u[(ri, k - 1)][leg])
                a_out = None if f == F else chart_point(f, r["crossed"][k], cross_u[(ri, k)][leg])
                legs_in_face.setdefault(f, []).append((ri, leg, a_in, a_out, k))

    # order F's ribbons counterclockwise after the widest gap
    centers = {}
    for ri, leg, a_in, _, _ in legs_in_face[F]:
        centers.setdefault(ri, []).append(a_in)
    cang = {ri: math.atan2(sum(math.sin(a) for a in v), sum(math.cos(a) for a in v)) % (2 * math.pi)
            for ri, v in centers.items()}
    order = sorted(cang, key=cang.get)
    k = len(order)
    if k == 1:
        cut = cang[order[0]] + math.pi
    else:
        gaps = [((cang[order[(i + 1) % k]] - cang[order[i]]) % (2 * math.pi), i) for i in range(k)]
        g, i = max(gaps)
        cut = cang[order[i]] + g / 2
    rot = cut - math.pi / 2
    rel = {ri: (cang[ri] - rot - math.pi / 2) % (2 * math.pi) for ri in order}
    order = sorted(order, key=rel.get)
    num = {ri: j for j, ri in enumerate(order)}
    eta = {ri: (k - num[ri]) / (k + 1) for ri in order}

    def leg_height(ri, leg):
        ht, hh = ribbons[ri]["hsign"]
        return (ht if leg == 0 else hh) * eta[ri]

    def edge_height(lab, uval):
        a, b = inside[lab]
        if a == b:
            return a
        r = next(r for r in ribbons if r["edge"] == lab)
        return a if uval < r["pi"] else b

    # crossings: list of dicts; positions recorded per piece
    crossings = []
    on_edge = {}  # label -> [(u, cid, role)]
    on_leg = {}  # (ri, leg) -> [((k, t), cid, role)] along the path, forward

    def add(piece_a, pos_a, h_a, dir_a, piece_b, pos_b, h_b, dir_b):
        if h_a == h_b:
            raise PreconditionError("two strands at the same height cross")
        over_a = h_a > h_b
        d_over, d_under = (dir_a, dir_b) if over_a else (dir_b, dir_a)
        sign = 1 if _cross(d_over, d_under) > 0 else -1
        cid = len(crossings)
        crossings.append(sign)
        for piece, pos, over in ((piece_a, pos_a, over_a), (piece_b, pos_b, not over_a)):
            role = "O" if over else "U"
            if piece[0] == "edge":
                on_edge.setdefault(piece[1], []).append((pos, cid, role))
            else:
                on_leg.setdefault(piece[1:], []).append((pos, cid, role))

    def orient(ri, leg, v):
        return v if leg == 0 else (-v[0], -v[1])

    # chords in ordinary faces; legs crossing sides
    chords = {}
    for f, lst in legs_in_face.items():
        if f == F:
            continue
        segs = []
        for ri, leg, a_in, a_out, kk in lst:
            p1, p2 = _pt(a_in), _pt(a_out)
            segs.append((ri, leg, kk, p1, p2))
            chords[(ri, leg, kk)] = (p1, p2)
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                ri, la, ka, p1, p2 = segs[i]
                rj, lb, kb, p3, p4 = segs[j]
                if ri == rj:
                    continue
                hit = _seg_hit(p1, p2, p3, p4)
                if hit is None:
                    continue
                s, t = hit
                da = orient(ri, la, (p2[0] - p1[0], p2[1] - p1[1]))
                db = orient(rj, lb, (p4[0] - p3[0], p4[1] - p3[1]))
                add(("leg", ri, la), (ka, s), leg_height(ri, la), da,
                    ("leg", rj, lb), (kb, t), leg_height(rj, lb), db)
    for ri, r in enumerate(ribbons):
        for step, el in enumerate(r["crossed"]):
            fa = r["path"][step]
            for leg in (0, 1):
                uval = cross_u[(ri, step)][leg]
                p1, p2 = chords[(ri, leg, step)]
                a = chart_point(fa, el, uval)
                fw = r["fw"][step]
                tang = (-math.sin(a), math.cos(a))
                de = tang if fw else (-tang[0], -tang[1])
                dl = orient(ri, leg, (p2[0] - p1[0], p2[1] - p1[1]))
                add(("edge", el), uval, edge_height(el, uval), de,
                    ("leg", ri, leg), (step, 1.5), leg_height(ri, leg), dl)

    # the target face: spirals towards a row of tips inside an ellipse
    xs = {ri: (0.0 if k == 1 else -0.4 + 0.8 * num[ri] / (k - 1)) for ri in order}
    spirals = []
    for ri, leg, a_in, _, kk in legs_in_face[F]:
        x = xs[ri]
        y = math.sqrt(_R_ROW ** 2 - x * x)
        bottom = leg_height(ri, leg) < 0
        a0 = a_in - rot
        # keep the start angle inside (pi/2, 5pi/2)
        a0 = (a0 - math.pi / 2) % (2 * math.pi) + math.pi / 2
        if bottom:
            a1 = math.atan2(-y, x) % (2 * math.pi)
            if a1 < math.pi:
                a1 += 2 * math.pi
        else:
            a1 = math.atan2(y, x) % (2 * math.pi) + 2 * math.pi
        spirals.append((ri, leg, kk, a0, a1))
    c = 1 - _R_END

    def velocity(a0, a1, s, r_sign):
        th = a0 + s * (a1 - a0)
        r = 1 - c * s
        v = (-c * math.cos(th) - r * (a1 - a0) * math.sin(th) + 0.0,
             -c * math.sin(th) + r * (a1 - a0) * math.cos(th))
        # back to the face chart: undo the rotation
        cr, sr = math.cos(rot), math.sin(rot)
        return (r_sign * (cr * v[0] - sr * v[1]), r_sign * (sr * v[0] + cr * v[1]))

    for i in range(len(spirals)):
        for j in range(i + 1, len(spirals)):
            ri, la, ka, a0, a1 = spirals[i]
            rj, lb, kb, b0, b1 = spirals[j]
            # theta_a(s) - theta_b(s) = D0 + s (D1 - D0) in 2 pi Z
            D0, D1 = a0 - b0, a1 - b1
            lo, hi = sorted((D0, D1))
            n_lo = math.ceil(lo / (2 * math.pi) - 1e-12)
            n_hi = math.floor(hi / (2 * math.pi) + 1e-12)
            for n in range(n_lo, n_hi + 1):
                if D1 == D0:
                    continue
                s = (2 * math.pi * n - D0) / (D1 - D0)
                if not (1e-9 < s < 1 - 1e-9):
                    continue
                da = velocity(a0, a1, s, 1 if la == 0 else -1)
                db = velocity(b0, b1, s, 1 if lb == 0 else -1)
                add(("leg", ri, la), (ka, s), leg_height(ri, la), da,
                    ("leg", rj, lb), (kb, s), leg_height(rj, lb), db)

    return _assemble(m, u, u_x, p, q, name, ribbons, on_edge, on_leg, num, crossings, k, leg_height)


def _assemble(m, u, u_x, p, q, name, ribbons, on_edge, on_leg, num, crossings, k, leg_height):
    pd = m.pd
    ncross_orig = {}
    for x in range(len(pd)):
        if x not in u_x:
            ncross_orig[x] = len(ncross_orig)
    base = len(ncross_orig)
    signs = [m.signs[x] for x in sorted(ncross_orig, key=ncross_orig.get)] + crossings
    rib_of_edge = {r["edge"]: ri for ri, r in enumerate(ribbons)}

    def leg_events(ri, leg):
        evs = sorted(on_leg.get((ri, leg), []), key=lambda t: t[0])
        out = [(role, base + cid) for _, cid, role in evs]
        return out if leg == 0 else out[::-1]

    cycles = []
    eps = [0] * k
    for ci, comp in enumerate(m.comps):
        if ci == u:
            continue
        ev = []
        for j, (x, role) in enumerate(comp):
            if x not in u_x:
                ev.append(("O" if role == "over" else "U", ncross_orig[x]))
            lab = m.visit_edge[(ci, j)]
            pts = sorted(on_edge.get(lab, []))
            if lab in rib_of_edge:
                ri = rib_of_edge[lab]
                pi = ribbons[ri]["pi"]
                ev.extend((role_, base + cid) for uu, cid, role_ in pts if uu < pi)
                s_idx = num[ri]
                ev.extend(leg_events(ri, 0))
                out_bottom = leg_height(ri, 0) < 0
                eps[s_idx] = 1 if out_bottom else -1
                ev.extend([("D", s_idx), ("B", s_idx)] if out_bottom else [("B", s_idx), ("D", s_idx)])
                ev.extend(leg_events(ri, 1))
                ev.extend((role_, base + cid) for uu, cid, role_ in pts if uu > pi)
            else:
                ev.extend((role_, base + cid) for uu, cid, role_ in pts)
        cycles.append(ev)
    d = from_events(p, q, cycles, signs, eps, name=name)
    ensure_valid(d)
    return d
