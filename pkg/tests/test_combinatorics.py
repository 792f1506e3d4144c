from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from conftest import cyclic_partitions
from pantslab.combinatorics import (GraphicalCode, all_cyclic_orders, canonicalize,
                                    coarsen_by_vertices, coarsening_vertex_set, coarsenings,
                                    coarsenings_one_step, decyclizations, divides,
                                    enumerate_cyclic_partitions, format_subset, full_mask,
                                    graphical_code, interlacing, mask, maximal_interlacing,
                                    members, parse_partition, parse_subset, popcount, refines,
                                    rotate, separated_by_vertices, standard_partition, submasks,
                                    vertex_coarsening)
from pantslab.errors import MalformedPartitionError


def P(*parts):
    return canonicalize([set(p) for p in parts])


# -- independent oracles -----------------------------------------------------------

def brute_cyclic_partitions(n):
    """Ordered set partitions of {0..n} (all surjections), modulo rotation."""
    N = n + 1
    seen = set()
    for k in range(1, N + 1):
        for f in product(range(k), repeat=N):
            if len(set(f)) != k:
                continue
            blocks = tuple(frozenset(e for e in range(N) if f[e] == b) for b in range(k))
            rots = [blocks[r:] + blocks[:r] for r in range(k)]
            seen.add(min(tuple(tuple(sorted(b)) for b in rot) for rot in rots))
    return seen


def brute_coarsenings(sigma):
    """Every partition obtained by cutting the cyclic part sequence into consecutive runs."""
    k = len(sigma.parts)
    out = {canonicalize([full_mask(sigma.size)], sigma.size)}
    for m in range(2, k + 1):
        for cuts in combinations(range(k), m):
            runs = []
            for a, b in zip(cuts, cuts[1:] + (cuts[0] + k,)):
                runs.append(mask(e for t in range(a, b) for e in members(sigma.parts[t % k])))
            out.add(canonicalize(runs, sigma.size))
    return out


# -- examples --------------------------------------------------------------------------

def test_canonicalize_examples():
    assert P({1, 2}, {0}).as_sets() == ((0,), (1, 2))
    assert P({0, 1, 2}).as_sets() == ((0, 1, 2),)
    assert P({2}, {0}, {1}).as_sets() == ((0,), (1,), (2,))


def test_canonicalize_rejects_malformed():
    with pytest.raises(MalformedPartitionError):
        canonicalize([{0, 1}, {1, 2}])
    with pytest.raises(MalformedPartitionError):
        canonicalize([{0}, {2}], 3)
    with pytest.raises(MalformedPartitionError):
        canonicalize([])
    with pytest.raises(MalformedPartitionError):
        canonicalize([0, 1])


def test_parse_and_format_round_trip():
    s = parse_partition("<0|1,2>")
    assert s == P({0}, {1, 2})
    assert s.format() == "<0|1,2>"
    assert parse_partition(s.format()) == s
    assert parse_subset("{0,2}") == 0b101
    assert format_subset(0b101) == "{0,2}"


def test_refines_examples():
    assert refines(P({0}, {1}, {2}), P({0}, {1, 2}))
    assert refines(P({0}, {1}, {2}), P({0}, {1}, {2}))
    assert not refines(P({0}, {1}, {2}, {3}), P({0, 2}, {1, 3}))


def test_divides_examples():
    assert divides(P({0}, {1, 2}), 0b011)
    assert not divides(P({0}, {1, 2}), 0b110)
    assert not divides(P({0, 1, 2}), 0b111)


def test_interlacing_examples():
    assert interlacing(GraphicalCode(6, mask([1, 4]), mask([0, 3])))
    assert not interlacing(GraphicalCode(6, mask([1, 2]), mask([2])))
    for V in (0, 1, 0b100):
        assert not interlacing(GraphicalCode(6, V, 0b111111))


def test_maximal_interlacing_examples():
    assert maximal_interlacing(GraphicalCode(3, 0b011, 0b011))
    # one marked edge in every arc of the full hexagon code
    assert maximal_interlacing(GraphicalCode(6, 0b111111, 0b000011))
    assert not maximal_interlacing(GraphicalCode(6, mask([1, 2]), mask([2])))


def test_enumeration_counts_match_brute_force():
    # Unquotiented by reflection: these are the oracle values (see decisions ledger).
    counts = {n: len(enumerate_cyclic_partitions(n, 1)) for n in range(1, 6)}
    assert counts == {n: len(brute_cyclic_partitions(n)) for n in range(1, 6)}
    assert len(enumerate_cyclic_partitions(1, 1)) == 2
    assert len(enumerate_cyclic_partitions(2, 2)) == 5
    assert len(enumerate_cyclic_partitions(2, 1)) == 6


def test_enumeration_equals_brute_force_sets():
    for n in range(1, 5):
        ours = {p.as_sets() for p in enumerate_cyclic_partitions(n, 1)}
        brute = {canonicalize([set(b) for b in q]).as_sets() for q in brute_cyclic_partitions(n)}
        assert ours == brute


def test_full_cyclic_orders():
    full3 = enumerate_cyclic_partitions(3, 4)
    assert len(full3) == 6
    assert {tuple(members(p)[0] for p in s.parts) for s in full3} == set(all_cyclic_orders(3))
    for n in range(1, 6):
        assert len(enumerate_cyclic_partitions(n, n + 1)) == len(all_cyclic_orders(n))


def test_enumeration_is_sorted_and_deterministic():
    a = enumerate_cyclic_partitions(4, 2)
    assert a == enumerate_cyclic_partitions(4, 2)
    assert [p.as_sets() for p in a] == sorted(p.as_sets() for p in a)


def test_decyclizations():
    assert len(decyclizations(P({0}, {1}, {2}))) == 3
    assert len(decyclizations(P({0, 1, 2}))) == 1
    assert decyclizations(P({0}, {1, 2})) == [(0b001, 0b110), (0b110, 0b001)]


def test_submasks_and_popcount():
    assert submasks(0b101) == (0b001, 0b100, 0b101)
    assert submasks(0b101, nonempty=False) == (0, 0b001, 0b100, 0b101)
    assert popcount(0b1011) == 3
    assert members(0b1010) == (1, 3)


# -- exhaustive properties -----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_refines_is_a_partial_order(n):
    parts = enumerate_cyclic_partitions(n, 1)
    R = {(a, b) for a in parts for b in parts if refines(a, b)}
    for a in parts:
        assert (a, a) in R
    for a, b in R:
        if a != b:
            assert (b, a) not in R
    for a, b in R:
        for c in parts:
            if (b, c) in R:
                assert (a, c) in R


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_refines_matches_brute_force_coarsenings(n):
    parts = enumerate_cyclic_partitions(n, 1)
    for s in parts:
        brute = brute_coarsenings(s)
        assert {t for t in parts if refines(s, t)} == brute
        assert set(coarsenings(s, 1)) == brute


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_divides_is_monotone(n):
    parts = enumerate_cyclic_partitions(n, 1)
    full = full_mask(n + 1)
    for fine in parts:
        for coarse in coarsenings(fine, 1):
            for J in submasks(full):
                if divides(coarse, J):
                    assert divides(fine, J)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_interlacing_equals_divides(n):
    full = full_mask(n + 1)
    for s in enumerate_cyclic_partitions(n, 2):
        for J in submasks(full):
            code, order = graphical_code(s, J)
            assert code.partition().size == s.size
            assert interlacing(code) == divides(s, J)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vertex_coarsening_round_trip(n):
    for s in enumerate_cyclic_partitions(n, 2):
        W = full_mask(len(s))
        for V in submasks(W):
            t = vertex_coarsening(s, V)
            assert refines(s, t)
            assert len(t) == max(1, popcount(V))
            if popcount(V) >= 2:
                assert coarsening_vertex_set(s, t) == V
            for J in submasks(full_mask(n + 1)):
                assert separated_by_vertices(s, V, J) == (popcount(V) >= 2 and divides(t, J))


def test_one_step_coarsenings_merge_neighbours():
    s = standard_partition(3)
    steps = coarsenings_one_step(s)
    assert len(steps) == 4
    assert all(len(t) == 3 and refines(s, t) for t in steps)


@given(cyclic_partitions())
def test_canonicalize_idempotent_and_rotation_invariant(s):
    assert canonicalize(s.parts, s.size) == s
    for r in range(len(s.parts)):
        assert canonicalize(rotate(s.parts, r), s.size) == s


@given(cyclic_partitions(min_parts=2), st.data())
def test_divides_matches_definition(s, data):
    J = data.draw(st.integers(0, full_mask(s.size)))
    hit = sum(1 for p in s.parts if p & J)
    assert divides(s, J) == (hit >= 2)


@given(cyclic_partitions(min_parts=2))
def test_coarsen_by_vertices_covers_ground_set(s):
    for V in submasks(full_mask(len(s)), nonempty=False):
        arcs = coarsen_by_vertices(s, V)
        u = 0
        for a in arcs:
            assert not u & a
            u |= a
        assert u == full_mask(s.size)


@given(cyclic_partitions(min_parts=1))
def test_parse_format_round_trip_random(s):
    assert parse_partition(s.format()) == s
