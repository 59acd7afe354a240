import json

import pytest

from helpers import corpus, fixture
from lensalex.build import braid_closure, braid_events, pierce, unlink_through
from lensalex.diagram import (DiskStrand, MixedDiagram, component_flux, ensure_valid, flip_crossing,
                              flux, from_events, from_json, kbar, loads, reverse_orientation,
                              smooth_crossing, validate)
from lensalex.errors import DiagramError, NotInternalCrossing, ParseError


def canonical(d):
    # component cycles are cyclic: rotate each to start at its smallest arc
    comps = []
    for c in d.components:
        i = c.index(min(c))
        comps.append(c[i:] + c[:i])
    return (d.p, d.q, tuple(comps), d.crossings, d.disk_strands)


def codes(d):
    return {v.code for v in validate(d)}


def test_affine_trefoil_is_valid():
    d = fixture("K0_p3")
    assert not validate(d)
    assert d.is_affine() and len(d.crossings) == 3


def test_not_coprime():
    d = fixture("K1_p3").with_surgery(4, 2)
    assert "NotCoprime" in codes(d)
    with pytest.raises(DiagramError):
        ensure_valid(d)


def test_nonadjacent_disk_arcs():
    d = fixture("K1_p3")
    s = d.disk_strands[0]
    other = next(a for a in d.arcs if a not in (s.above, s.below))
    bad = MixedDiagram(d.p, d.q, d.components, d.crossings, (DiskStrand(s.above, other, s.eps),))
    assert validate(bad)


def test_wrong_eps_direction():
    d = fixture("K2_p3")
    s = d.disk_strands[0]
    flipped = (DiskStrand(s.above, s.below, -s.eps),) + d.disk_strands[1:]
    assert validate(MixedDiagram(d.p, d.q, d.components, d.crossings, flipped))


def test_unknown_arc():
    d = fixture("K0_p3")
    c = d.crossings[0]
    bad = MixedDiagram(d.p, d.q, d.components,
                       (type(c)(c.sign, "nowhere", c.under_in, c.under_out),) + d.crossings[1:])
    assert validate(bad)


def test_kbar_examples():
    assert kbar(fixture("K1_p3")) == 1
    for k in (1, 2, 3):
        assert kbar(unlink_through(k, 5, 2)) == k
    updown = from_events(2, 1, [[("D", 0), ("B", 0), ("B", 1), ("D", 1)]], [], [1, -1])
    assert kbar(updown) == 0


def test_flux_data():
    fd = flux(fixture("K2_p4"))
    assert (fd.kbar, fd.d, fd.p_prime, fd.k_prime) == (2, 2, 2, 1)
    fd = flux(fixture("K0_p3"))
    assert (fd.d, fd.p_prime) == (3, 1)


def test_component_flux():
    assert component_flux(fixture("K1_p3")) == [1]
    assert component_flux(fixture("L2_p5q2")) == [1, 1]
    two = from_events(3, 1, [[("D", 0), ("B", 0), ("D", 1), ("B", 1)],
                             [("B", 2), ("D", 2), ("B", 3), ("D", 3)]], [], [1, 1, -1, -1])
    assert component_flux(two) == [2, -2] and kbar(two) == 0


@pytest.mark.parametrize("d", corpus(), ids=lambda d: d.name)
def test_reverse_orientation(d):
    r = reverse_orientation(d)
    assert not validate(r)
    assert kbar(r) == -kbar(d)
    assert component_flux(r) == [-f for f in component_flux(d)]
    assert sorted(c.sign for c in r.crossings) == sorted(c.sign for c in d.crossings)
    assert reverse_orientation(r) == d


@pytest.mark.parametrize("d", corpus(), ids=lambda d: d.name)
def test_json_roundtrip(d):
    again = loads(d.dumps())
    assert again == d and again.name == d.name


def test_parse_errors():
    with pytest.raises(ParseError):
        loads("{")
    with pytest.raises(ParseError):
        from_json({"components": []})
    with pytest.raises(ParseError):
        from_json({"surgery": {"p": "3", "q": 1}, "components": []})
    with pytest.raises(ParseError):
        from_json([1, 2])


def test_flip_twice():
    d = fixture("K1_p3")
    for i in range(3):
        f = flip_crossing(d, i)
        assert f.crossings[i].sign == -d.crossings[i].sign
        assert not validate(f)
        assert canonical(flip_crossing(f, i)) == canonical(d)


def test_smooth_trefoil_crossing():
    d = fixture("K1_p3")
    s = smooth_crossing(d, 0)
    assert not validate(s)
    assert len(s.components) == 2 and len(s.crossings) == 2
    assert [x.eps for x in s.disk_strands] == [x.eps for x in d.disk_strands]


def test_smooth_kink():
    d = from_events(3, 1, [[("D", 0), ("B", 0), ("O", 0), ("U", 0)]], [1], [1])
    s = smooth_crossing(d, 0)
    assert not s.crossings
    # the loop of the kink becomes its own (split) circle
    assert len(s.components) == 2


def test_smooth_changes_component_count_by_one():
    for d in (fixture("K1_p3"), fixture("clasp_p3"), fixture("fig8_p2")):
        for i in range(len(d.crossings)):
            s = smooth_crossing(d, i)
            assert abs(len(s.components) - len(d.components)) == 1


def test_bad_crossing_index():
    with pytest.raises(NotInternalCrossing):
        flip_crossing(fixture("K1_p3"), 7)
    with pytest.raises(NotInternalCrossing):
        smooth_crossing(fixture("K1_p3"), -1)


def test_sample_json_schema():
    obj = json.loads(fixture("L1_p3q1").dumps())
    assert set(obj) >= {"surgery", "components", "crossings", "disk_strands"}
    assert obj["surgery"] == {"p": 3, "q": 1}
    assert obj["disk_strands"][0]["eps"] == 1


def test_builders():
    c, s, e = braid_events([1, 1, 1], 2)
    assert len(c) == 1 and e == [1, 1]
    k1 = pierce(*braid_events([1, 1, 1], 2, axis=False)[:2], 3, 1, (0, 0))
    assert k1.k == 1 and not validate(k1)
    with pytest.raises(ValueError):
        braid_closure([2], 2)
