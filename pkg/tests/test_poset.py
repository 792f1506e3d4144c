import pytest
from hypothesis import given, strategies as st

from pantslab.combinatorics import full_mask, popcount, submasks
from pantslab.errors import GradingError
from pantslab.labels import Opaque, PlainFace, SimplexFace
from pantslab.poset import (FacePoset, boundary_subcomplex, check_graded, cycle_graph, dsd,
                            dsd_simplex, euler_characteristic, generated_subcomplex,
                            plain_simplex, point, polygon, product, subcomplex, theta_graph)


def interval():
    return plain_simplex(0b11)


def test_dsd_simplex_small():
    D = dsd_simplex(0b11)
    assert len(D) == 5 and D.f_vector() == (3, 2)
    assert dsd_simplex(0b1).f_vector() == (1,)


@pytest.mark.parametrize("n", range(0, 7))
def test_dsd_simplex_cell_count(n):
    D = dsd_simplex(full_mask(n + 1))
    # identity sum_{J'} (2^{|J'|} - 1)
    assert len(D) == sum(2 ** popcount(Jp) - 1 for Jp in submasks(full_mask(n + 1)))
    assert len(D) == 3 ** (n + 1) - 2 ** (n + 1)
    assert euler_characteristic(D) == 1


def test_products():
    C = theta_graph()
    assert product(point(), C).f_vector() == C.f_vector()
    sq = product(interval(), interval())
    assert len(sq) == 9 and euler_characteristic(sq) == 1
    dd = product(dsd_simplex(0b11), dsd_simplex(0b11))
    assert len(dd) == 25 and euler_characteristic(dd) == 1


def test_subcomplex():
    C = dsd_simplex(0b111)
    assert subcomplex(C, lambda c: True) == C
    V = subcomplex(C, lambda c: C.dim(c) == 0)
    assert euler_characteristic(V) == len(V) == len(C.cells(0))
    for d in range(1, 5):
        S = plain_simplex(full_mask(d + 1))
        top = PlainFace(full_mask(d + 1))
        B = boundary_subcomplex(S, top)
        assert euler_characteristic(B) == 1 + (-1) ** (d - 1)


def test_subcomplex_must_be_closed():
    from pantslab.errors import ClosureViolationError
    C = dsd_simplex(0b11)
    with pytest.raises(ClosureViolationError):
        subcomplex(C, lambda c: c != SimplexFace(0b1, 0b1))


def test_euler_characteristic_examples():
    assert euler_characteristic(theta_graph()) == -1
    assert euler_characteristic(FacePoset({})) == 0
    assert euler_characteristic(cycle_graph(5)) == 0


def test_grading_is_enforced():
    with pytest.raises(GradingError):
        FacePoset({Opaque("a"): 0, Opaque("b"): 2}, [(Opaque("a"), Opaque("b"))])
    with pytest.raises(GradingError):
        FacePoset({Opaque("a"): 0}, [(Opaque("a"), Opaque("zz"))])
    check_graded(polygon(5))


def test_cells_are_ordered_by_dimension_then_key():
    D = dsd_simplex(0b111)
    keys = [(d, c.key()) for c, d in zip(D.labels, D.dims)]
    assert keys == sorted(keys)


def test_dsd_of_simplex_matches_direct_dsd():
    from pantslab.isomorphism import is_isomorphic
    for J in (0b1, 0b11, 0b111, 0b1111):
        assert is_isomorphic(dsd(plain_simplex(J)), dsd_simplex(J)) is not None


def test_closure_and_generated_subcomplex():
    D = dsd_simplex(0b111)
    top = SimplexFace(0b001, 0b111)
    cl = D.closure(top)
    assert all(D.is_face(c, top) for c in cl)
    G = generated_subcomplex(D, [top])
    assert set(G.labels) == cl
    assert euler_characteristic(G) == 1


def test_opposite_reverses_covers():
    C = polygon(4)
    O = C.opposite()
    assert set(O.covers()) == {(c, f) for f, c in C.covers()}
    assert O.f_vector() == tuple(reversed(C.f_vector()))


@given(st.integers(1, 4), st.integers(1, 4))
def test_product_counts_multiply(a, b):
    A, B = plain_simplex(full_mask(a)), plain_simplex(full_mask(b))
    P = product(A, B)
    assert len(P) == len(A) * len(B)
    assert euler_characteristic(P) == euler_characteristic(A) * euler_characteristic(B)
