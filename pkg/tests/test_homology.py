import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from helpers import corpus, fixture
from lensalex.build import unlink_through
from lensalex.diagram import from_events
from lensalex.homology import (AbelianGroup, h1_closed_form, h1_complement, h1_snf, homology_class,
                               int_det, matmul, p_prime, smith_normal_form)

ORACLE = settings(max_examples=300, derandomize=True, deadline=None,
                  suppress_health_check=[HealthCheck.too_slow])

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def test_snf_examples():
    D, _, _ = smith_normal_form([[2, 0], [0, 3]])
    assert diag(D) == [1, 6]
    D, _, _ = smith_normal_form([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]]
    D, _, _ = smith_normal_form([[7]])
    assert D == [[7]]


@ORACLE
@given(matrices)
def test_snf_against_sympy(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert i == j or x == 0
    ref = sympy_snf(Matrix(M), domain=ZZ)
    mine = [abs(x) for x in diag(D)]
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert mine == theirs
    ds = [x for x in mine if x]
    assert all(b % a == 0 for a, b in zip(ds, ds[1:]))


def test_group_display():
    assert str(AbelianGroup(1, (3,))) == "Z (+) Z_3"
    assert str(AbelianGroup(2)) == "Z^2"
    assert str(AbelianGroup(0)) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))


def test_h1_examples():
    assert h1_complement(fixture("K0_p3")) == AbelianGroup(1, (3,))
    assert h1_complement(fixture("K1_p3")) == AbelianGroup(1)
    assert h1_complement(unlink_through(2, 4, 1)) == AbelianGroup(2)


def test_homology_class_examples():
    assert homology_class(fixture("K0_p3"), 0) == 0
    assert homology_class(fixture("K1_p3"), 0) == 1
    twice = unlink_through(1, 4, 3)
    two = from_events(4, 3, [[("D", 0), ("B", 0), ("D", 1), ("B", 1)]], [], [1, 1])
    assert homology_class(twice, 0) == 3 and homology_class(two, 0) == 2


def test_p_prime_examples():
    assert p_prime(fixture("K1_p3")) == 3
    assert p_prime(fixture("K2_p4")) == 2
    assert p_prime(fixture("K0_p3")) == 1


def test_class_invariant_under_cancelling_pair():
    base = from_events(5, 2, [[("D", 0), ("B", 0)]], [], [1])
    more = from_events(5, 2, [[("D", 0), ("B", 0), ("B", 1), ("D", 1), ("D", 2), ("B", 2)]], [],
                       [1, -1, 1])
    assert homology_class(base, 0) == homology_class(more, 0)


@pytest.mark.parametrize("d", corpus(), ids=lambda d: d.name)
def test_routes_agree_on_corpus(d):
    assert h1_snf(d) == h1_closed_form(d)


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_affine_knot(p):
    assert h1_snf(fixture("K0_p3").with_surgery(p, 1)) == AbelianGroup(1, (p,))
