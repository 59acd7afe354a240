import json
import os

import pytest

from helpers import DATA, corpus
from lensalex import alexander, h1_complement, kbar, load
from lensalex.algebra import LaurentPoly, equal_up_to_unit, substitute
from lensalex.alexander import classical_alexander
from lensalex.errors import ParseError, PreconditionError
from lensalex.pd import from_pd, linking_matrix, mirror_pd, parse_pd, pd_alexander, pd_components, to_pd

TABLES = json.loads(open(os.path.join(DATA, "tables.json")).read())


def table(name):
    return [tuple(c) for c in TABLES[name]["pd"]]


def u_index(d, pd):
    # the first disk pass comes right after the internal crossings, with U on top
    comps, _ = pd_components(pd)
    return next(i for i, c in enumerate(comps) if (len(d.crossings), "over") in c)


with_pd = [d for d in corpus() if not d.is_affine()]


# parsing

def test_parse_both_formats():
    a = parse_pd("[(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]")
    b = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]")
    assert a == b == [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]


@pytest.mark.parametrize("text", ["[(1, 2, 3)]", "[(1, 2, 3, 4]", "PD[X[1,2]]", "17"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pd(text)


def test_labels_must_pair_up():
    with pytest.raises(ParseError):
        pd_components([(1, 2, 3, 4)])


# classical invariants of the table entries

def test_trefoil_pd():
    pd = parse_pd("[(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]")
    t = LaurentPoly.var("t1")
    assert equal_up_to_unit(pd_alexander(pd), t ** 2 - t + 1)


def test_table_linking_numbers():
    assert linking_matrix(table("L4a1")) == [[0, 2], [2, 0]]
    assert linking_matrix(table("L10n42")) == [[0, -1], [-1, 0]]


def test_mirror_negates_linking_and_is_an_involution():
    for name in ("L4a1", "L10n42"):
        pd = table(name)
        lk = linking_matrix(pd)
        assert linking_matrix(mirror_pd(pd)) == [[-v for v in row] for row in lk]
        assert mirror_pd(mirror_pd(pd)) == pd


def test_l4a1_two_variable_polynomial():
    xs = ("t1", "t2")
    t1, t2 = LaurentPoly.var("t1", xs), LaurentPoly.var("t2", xs)
    assert equal_up_to_unit(pd_alexander(table("L4a1")), t1 * t2 + 1)


def test_mirror_keeps_one_variable_polynomial():
    for name in ("L4a1", "L10n42"):
        pd = table(name)
        f = substitute(pd_alexander(pd), {"t1": 1, "t2": 1})
        g = substitute(pd_alexander(mirror_pd(pd)), {"t1": 1, "t2": 1})
        assert equal_up_to_unit(f, g.substitute({"t": LaurentPoly.var("t") ** -1}, ("t",)))


# mixed diagram <-> PD

def test_affine_has_no_pd():
    with pytest.raises(PreconditionError):
        to_pd(load(os.path.join(DATA, "K0_p3.json")))


@pytest.mark.parametrize("d", with_pd, ids=lambda d: d.name)
def test_pd_of_l_union_u_matches_classical(d):
    pd = to_pd(d)
    assert len(pd) == len(d.crossings) + 2 * len(d.disk_strands)
    u = u_index(d, pd)
    names = tuple(f"c{i}" for i in range(len(pd_components(pd)[0])))
    xa = ("x", "a")
    images = {v: LaurentPoly.var("a" if i == u else "x", xa) for i, v in enumerate(names)}
    got = pd_alexander(pd, names).substitute(images, xa)
    assert equal_up_to_unit(got, classical_alexander(d, "xa"))


@pytest.mark.parametrize("d", with_pd, ids=lambda d: d.name)
def test_from_pd_inverts_to_pd(d):
    pd = to_pd(d)
    e = from_pd(pd, d.p, d.q, u=u_index(d, pd), name=d.name)
    assert kbar(e) == kbar(d)
    assert str(h1_complement(e)) == str(h1_complement(d))
    assert alexander(e).equivalent(alexander(d))
