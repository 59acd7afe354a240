import json
import os

import pytest

from helpers import DATA, corpus, fixture
from lensalex import alexander, h1_complement, kbar, twisted_alexander
from lensalex.algebra import equal_up_to_unit, parse_poly
from lensalex.diagram import validate
from lensalex.errors import PreconditionError
from lensalex.normalform import normalize
from lensalex.pd import mirror_pd, pd_components, to_pd

TABLES = json.load(open(os.path.join(DATA, "tables.json")))


def table(name):
    return [tuple(c) for c in TABLES[name]["pd"]]


def u_index(d, pd):
    comps, _ = pd_components(pd)
    return next(i for i, c in enumerate(comps) if (len(d.crossings), "over") in c)


with_pd = [d for d in corpus() if not d.is_affine()]


@pytest.mark.parametrize("d", with_pd, ids=lambda d: d.name)
def test_renormalizing_keeps_invariants(d):
    pd = to_pd(d)
    e = normalize(pd, d.p, d.q, u=u_index(d, pd), keep_orientation=True)
    assert not validate(e)
    assert kbar(e) == kbar(d)
    assert str(h1_complement(e)) == str(h1_complement(d))
    assert alexander(e).equivalent(alexander(d))


@pytest.mark.parametrize("name", ["K1_p3", "K2_p3", "fig8_p2"])
def test_other_side_reverses_u(name):
    d = fixture(name)
    pd = to_pd(d)
    vals = set()
    for side in (0, 1):
        e = normalize(pd, d.p, d.q, u=u_index(d, pd), side=side)
        vals.add(kbar(e))
        assert str(h1_complement(e)) == str(h1_complement(d))
    assert vals == {kbar(d), -kbar(d)}


def test_default_u_is_the_unknotted_component():
    e = normalize(table("L10n42"), 3, 1)
    assert abs(kbar(e)) == 1


def test_u_needs_no_self_crossings():
    pd = [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]
    with pytest.raises(PreconditionError):
        normalize(pd, 3, 1)


def test_l4a1_mirror():
    e = normalize(mirror_pd(table("L4a1")), 3, 1, keep_orientation=True)
    assert kbar(e) == -2
    assert str(alexander(e)) == "1"
    assert str(h1_complement(e)) == str(h1_complement(fixture("ex3_L4a1_p3")))


def test_l10n42_value():
    e = normalize(table("L10n42"), 3, 1)
    want = parse_poly("t^12 - t^11 + t^8 - t^6 + t^4 - t + 1", ("t",))
    assert equal_up_to_unit(alexander(e).value, want)
    assert twisted_alexander(e, 0).equivalent(alexander(e))


def test_bundled_example_fixtures_are_reproducible():
    for name, pd in [("ex3_L4a1_p3", mirror_pd(table("L4a1"))), ("ex3_L10n42_p3", table("L10n42"))]:
        e = normalize(pd, 3, 1, keep_orientation=name.startswith("ex3_L4a1"), name=name)
        assert e.to_json() == fixture(name).to_json()
