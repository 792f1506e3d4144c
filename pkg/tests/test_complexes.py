from itertools import permutations
from math import comb

import pytest

from pantslab.combinatorics import (divides, enumerate_cyclic_partitions, full_mask, graphical_code,
                                    mask, maximal_interlacing, parse_partition, popcount,
                                    standard_partition, submasks)
from pantslab.collapse import is_collapsible_to_point
from pantslab.complexes import (mu1_fiber, mu2_fiber, ober_complex, ober_stratum_lattice,
                                ober_stratum_lattice_from_product, product_dsd, skeleton_S,
                                skeleton_Sigma, stratum_lattice, verify_stanley_duality)
from pantslab.errors import EmptyStratumError
from pantslab.geometry import TwoPartition, all_two_partitions
from pantslab.homology import homology_z2
from pantslab.isomorphism import is_isomorphic
from pantslab.labels import SFace, SimplexFace
from pantslab.poset import boundary_subcomplex, check_graded, dsd_simplex, euler_characteristic


def strip(b):
    b = list(b)
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return tuple(b)


def strata(n):
    full = full_mask(n + 1)
    return [(s, J) for s in enumerate_cyclic_partitions(n, 2) for J in submasks(full) if divides(s, J)]


# -- S ---------------------------------------------------------------------------------

def test_skeleton_S_n2():
    S = skeleton_S(2)
    # labels S_{IJ} with |I| >= 2 give the compact tripod (see decisions ledger)
    assert S.f_vector() == (4, 3)
    assert euler_characteristic(S) == 1
    assert sorted(str(c) for c in S.maximal_cells()) == [
        "S[{0,1},{0,1,2}]", "S[{0,2},{0,1,2}]", "S[{1,2},{0,1,2}]"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_skeleton_S_dimensions_and_dsd_embedding(n):
    S = skeleton_S(n)
    D = dsd_simplex(full_mask(n + 1))
    for c, d in zip(S.labels, S.dims):
        assert d == popcount(c.J & ~c.I)
        if c.I == c.J:
            assert d == 0
        assert SimplexFace(c.I, c.J) in D
    dcovers = set(D.covers())
    for f, c in S.covers():
        assert (SimplexFace(f.I, f.J), SimplexFace(c.I, c.J)) in dcovers
    assert strip(homology_z2(S)) == (1,)


@pytest.mark.parametrize("n", [2, 3])
def test_skeleton_S_symmetric_under_relabeling(n):
    S = skeleton_S(n)
    covers = set(S.covers())
    for perm in permutations(range(n + 1)):
        def act(m):
            return mask(perm[e] for e in range(n + 1) if m >> e & 1)
        images = {(SFace(act(f.I), act(f.J)), SFace(act(c.I), act(c.J))) for f, c in covers}
        assert images == covers


def test_skeleton_S_counts():
    assert skeleton_S(3).f_vector() == (11, 16, 6)
    assert skeleton_S(4).f_vector() == (26, 55, 40, 10)


# -- Sigma ---------------------------------------------------------------------------------

def test_skeleton_Sigma_n2_is_theta():
    Sg = skeleton_Sigma(2)
    assert Sg.f_vector() == (2, 3)
    assert homology_z2(Sg) == (1, 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_Sigma_counts(n):
    from math import factorial
    Sg = skeleton_Sigma(n)
    assert len(Sg.maximal_cells()) == 2 ** n - 1
    assert len(Sg.cells(0)) == factorial(n)
    by_parts = {}
    for s in enumerate_cyclic_partitions(n, 2):
        by_parts[len(s)] = by_parts.get(len(s), 0) + 1
    chi = sum((-1) ** (n + 1 - k) * c for k, c in by_parts.items())
    assert euler_characteristic(Sg) == chi


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_Sigma_homology_is_torus(n):
    assert strip(homology_z2(skeleton_Sigma(n))) == tuple(comb(n, k) for k in range(n))


# -- strata ---------------------------------------------------------------------------------

def test_stratum_lattice_hexagon():
    P = stratum_lattice(standard_partition(2), 0b111)
    assert P.f_vector() == (6, 6, 1)
    assert euler_characteristic(P) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_minimal_cells_are_maximal_interlacing(n):
    P = stratum_lattice(standard_partition(n), full_mask(n + 1))
    for c in P.cells(0):
        assert len(c.sigma) == 2 and popcount(c.J) == 2
        code, _ = graphical_code(c.sigma, c.J)
        assert maximal_interlacing(code)


def test_empty_stratum_raises():
    with pytest.raises(EmptyStratumError):
        stratum_lattice(parse_partition("<0|1,2>"), 0b110)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_strata_are_balls_with_spherical_boundaries(n):
    for s, J in strata(n):
        P = stratum_lattice(s, J)
        check_graded(P)
        assert euler_characteristic(P) == 1 and is_collapsible_to_point(P)
        for c, d in zip(P.labels, P.dims):
            assert d == len(c.sigma) + popcount(c.J) - 4
            if d >= 1:
                assert euler_characteristic(boundary_subcomplex(P, c)) == 1 + (-1) ** (d - 1)
        O = ober_stratum_lattice(s, J)
        assert euler_characteristic(O) == 1 and is_collapsible_to_point(O)


def test_ober_stratum_lattice_hexagon_of_squares():
    O = ober_stratum_lattice(standard_partition(2), 0b111)
    assert O.f_vector() == (13, 18, 6)
    assert all(len(O.facets(c)) == 4 for c in O.cells(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ober_stratum_lattice_matches_product_oracle(n):
    for s, J in strata(n):
        assert ober_stratum_lattice(s, J) == ober_stratum_lattice_from_product(s, J)


# -- ober-tropical complex ---------------------------------------------------------------------

def test_ober_complex_n2():
    P = ober_complex(2)
    assert len(P) == 29 and P.dimension == 2
    assert strip(homology_z2(P)) == (1, 2)
    for c in P.labels:
        assert divides(c.right.sigma, c.left.I)


@pytest.mark.parametrize("n,cells,dim", [(1, 1, 0), (2, 29, 2), (3, 697, 4)])
def test_ober_complex_homology_matches_Sigma(n, cells, dim):
    P = ober_complex(n)
    assert (len(P), P.dimension) == (cells, dim)
    assert strip(homology_z2(P)) == strip(homology_z2(skeleton_Sigma(n)))


# -- duality ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("n,cells,facets", [(2, 13, 6), (3, 97, 20)])
def test_stanley_duality(n, cells, facets):
    rep = verify_stanley_duality(n)
    assert rep["ok"], rep["witness"]
    assert rep["cells"] == cells and rep["facets"] == facets == rep["minimal_cells"]


def test_duality_needs_n_at_least_2():
    with pytest.raises(ValueError):
        verify_stanley_duality(1)


# -- fibers ---------------------------------------------------------------------------------------

def test_mu2_fiber_n2_is_path():
    F = mu2_fiber(TwoPartition.from_minus(0b001, 2))
    assert F.f_vector() == (3, 2)
    assert strip(homology_z2(F)) == (1,)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mu2_fibers(n):
    for p in all_two_partitions(n):
        F = mu2_fiber(p, n)
        assert is_isomorphic(F, product_dsd(p)) is not None
        assert is_collapsible_to_point(F)


@pytest.mark.parametrize("n,betti", [(2, (1, 1)), (3, (1, 2, 1))])
def test_mu1_fibers(n, betti):
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            assert strip(homology_z2(mu1_fiber(i, j, n))) == betti
