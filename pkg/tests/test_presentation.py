import pytest

from helpers import corpus, fixture
from lensalex.build import chain_from_events, unlink_through
from lensalex.freegroup import Word
from lensalex.homology import group_from_relations, relation_matrix
from lensalex.presentation import chain_presentation, lens_presentation, wirtinger_s3


def tags(pres):
    return [t for _, t in pres.relators]


def test_lens_relator_k1():
    pres = lens_presentation(fixture("K1_p3"))
    assert pres.tagged("lens") == [Word.parse("a1 a1 a1 x1^-1")]


def test_lens_relator_affine():
    pres = lens_presentation(fixture("K0_p3"))
    assert pres.tagged("lens") == [Word.parse("a1 a1 a1")]
    assert tags(pres).count("wirtinger") == 3
    assert "u_over" not in tags(pres) and "u_under" not in tags(pres)
    assert pres.generators == ["x1", "x2", "x3", "a1"]


def test_affine_without_lens_is_s3():
    d = fixture("K0_p3")
    a, b = lens_presentation(d).without("lens"), wirtinger_s3(d)
    assert a.generators == b.generators and a.relators == b.relators


def test_unknot_through_disk():
    pres = lens_presentation(fixture("L1_p3q1"))
    assert pres.generators == ["x1", "x2", "a1"]
    assert pres.tagged("u_over") == [Word.parse("a1 x2 a1^-1 x1^-1")]
    assert pres.tagged("u_under") == [Word.parse("x1 a1 x1^-1 a1^-1")]
    assert pres.tagged("identification") == [Word.parse("x1 x2^-1")]


def test_unlink_lens_relator():
    pres = lens_presentation(unlink_through(2, 5, 2))
    assert pres.tagged("lens") == [Word.parse("a1 a1 a1 a1 a1 x2^-1 x1^-1 x2^-1 x1^-1")]
    assert pres.u_generators() == ["a1", "a2"]


def test_generator_order():
    pres = lens_presentation(fixture("K2_p3"))
    d = fixture("K2_p3")
    # x1..xk above, x(k+1)..x(2k) below, then the remaining arcs, then a1..ak
    assert [pres.gen_arc[f"x{i + 1}"] for i in range(2)] == [s.above for s in d.disk_strands]
    assert [pres.gen_arc[f"x{i + 3}"] for i in range(2)] == [s.below for s in d.disk_strands]
    assert pres.generators[-2:] == ["a1", "a2"]


@pytest.mark.parametrize("d", corpus(), ids=lambda d: d.name)
def test_relator_rank(d):
    pres = lens_presentation(d)
    h = group_from_relations(relation_matrix(pres), len(pres.generators))
    assert h.free_rank == len(d.components)
    assert all(w.letters or t == "lens" for w, t in pres.relators if t != "identification")


def test_chain_presentation():
    # trefoil strand through U1, and a second unknot U2 around another arc
    cyc = [[("D", 0), ("B", 0), ("O", 0), ("U", 2), ("O", 1), ("D", 1), ("B", 1), ("U", 0),
            ("O", 2), ("U", 1)]]
    c = chain_from_events([(3, 1), (2, 1)], cyc, [1, 1, 1], [1, 1], [0, 1])
    pres = chain_presentation(c)
    assert tags(pres).count("lens") == 2
    assert len(pres.layers) == 2



def test_chain_of_one_layer_is_lens_presentation():
    d = fixture("K1_p3")
    assert chain_presentation(d).relators == lens_presentation(d).relators
