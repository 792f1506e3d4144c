from math import comb

import pytest

from pantslab.combinatorics import members, popcount
from pantslab.cyclic_polytope import (cyclic_polytope_facets, cyclic_polytope_facets_bruteforce,
                                      det_exact, gale_even_facets, hull_facets_bruteforce,
                                      is_gale_even)
from pantslab.homology import homology_z2
from pantslab.labels import PlainFace
from pantslab.poset import subcomplex


def even_facet_count(d, r):
    m = d // 2
    return r * comb(r - m, m) // (r - m)


@pytest.mark.parametrize("d,r", [(2, 6), (2, 7), (4, 7), (4, 8), (4, 10), (6, 9), (6, 10)])
def test_gale_evenness_matches_hull_oracle(d, r):
    gale = gale_even_facets(d, r)
    assert gale == cyclic_polytope_facets_bruteforce(d, r)
    assert len(gale) == even_facet_count(d, r)


def test_hexagon():
    assert len(gale_even_facets(2, 6)) == 6
    assert sorted(members(F) for F in gale_even_facets(2, 6)) == [
        (1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)]


def test_odd_dimension_is_rejected_by_gale_generator():
    with pytest.raises(ValueError):
        gale_even_facets(3, 7)
    # the hull oracle still works there
    assert len(cyclic_polytope_facets_bruteforce(3, 6)) == 8


def test_facets_are_distinct_d_sets():
    for d, r in [(2, 6), (4, 8), (6, 10)]:
        fs = gale_even_facets(d, r)
        assert len(set(fs)) == len(fs)
        assert all(popcount(F) == d for F in fs)


def test_is_gale_even():
    assert is_gale_even({1, 2}, 6)
    assert not is_gale_even({1, 3}, 6)
    assert is_gale_even({1, 6}, 6)


def test_det_exact():
    assert det_exact([[2, 0], [0, 3]]) == 6
    assert det_exact([[1, 2], [2, 4]]) == 0
    assert det_exact([[0, 1], [1, 0]]) == -1


def test_pentagon_hull():
    facets = hull_facets_bruteforce([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])
    assert len(facets) == 5


@pytest.mark.parametrize("d,r", [(2, 6), (4, 8), (6, 10)])
def test_boundary_is_a_sphere(d, r):
    C = cyclic_polytope_facets(d, r)
    top = PlainFace(sum(1 << t for t in range(1, r + 1)))
    B = subcomplex(C, lambda c: c != top)
    assert homology_z2(B) == (1,) + (0,) * (d - 2) + (1,)
    assert C.dimension == d
