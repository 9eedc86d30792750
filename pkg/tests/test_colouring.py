"""Edge colourings, matchings, parity, and the snark predicates."""

import random

import pytest

import snarkdefect as sd
import oracles
from oracles import edge_pairs

PETERSEN_MATCHINGS = [
    (0, 5, 9, 10, 12), (0, 6, 7, 11, 13), (1, 3, 8, 10, 13),
    (1, 4, 5, 11, 14), (2, 3, 7, 12, 14), (2, 4, 6, 8, 9),
]


def as_sorted_maps(colourings):
    return sorted(tuple(sorted(c.items())) for c in colourings)


# --------------------------------------------------------------------------
# colouring enumeration against the 3^m oracle
# --------------------------------------------------------------------------

def test_enumeration_matches_oracle_tiny(theta, k4, dumbbell, k33, prism):
    cases = [
        theta, k4, dumbbell, k33, prism,
        sd.Multipole(1, [(0, None)] * 3),          # one tripole
        sd.Multipole(1, [(0, 0), (0, None)]),      # loop plus a semiedge
        sd.z_pole(),
    ]
    for m in cases:
        ends = [tuple(m.endpoints(e)) for e in range(m.edge_count)]
        got = as_sorted_maps(sd.enumerate_colourings(m))
        want = as_sorted_maps(oracles.all_colourings(ends))
        assert got == want


def test_colouring_counts(theta, k4, dumbbell):
    assert len(sd.enumerate_colourings(theta)) == 6
    assert len(sd.enumerate_colourings(k4)) == 6
    assert sd.enumerate_colourings(dumbbell) == []
    z = sd.z_pole()
    # 6 ways round the vertex x 3 x 3 for the two isolated edges
    assert len(sd.enumerate_colourings(z)) == 54


def test_enumerate_colourings_limit(k4):
    first_two = sd.enumerate_colourings(k4, limit=2)
    assert first_two == sd.enumerate_colourings(k4)[:2]


def test_three_edge_colour_on_colourables(theta, k4, k33, prism, cube):
    for g in (theta, k4, k33, prism, cube):
        col = sd.three_edge_colour(g)
        assert col is not None
        assert sd.check_colouring(g, col) is None


def test_three_edge_colour_on_snarks(petersen, j3, j5, j7, blanusa1, blanusa2):
    for g in (petersen, j3, j5, j7, blanusa1, blanusa2):
        assert sd.three_edge_colour(g) is None


def test_check_colouring_messages(k4):
    assert sd.check_colouring(k4, {0: 1, 1: 2, 2: 3, 3: 3, 4: 2, 5: 2}) == \
        "vertex 2: incident colours [2, 3, 2] do not cancel"
    assert sd.check_colouring(k4, {0: 1, 1: 2, 2: 3, 3: 3, 4: 2, 5: 7}) == \
        "edge 5 has no valid colour (got 7)"
    assert "got None" in sd.check_colouring(k4, {0: 1})


def test_colour_classes_are_matchings(k4, theta):
    classes = sd.colour_classes(k4, sd.three_edge_colour(k4))
    assert classes == (frozenset({0, 5}), frozenset({1, 4}), frozenset({2, 3}))
    for cls in classes:
        assert sd.is_perfect_matching(k4, cls)
    for cls in sd.colour_classes(theta, sd.three_edge_colour(theta)):
        assert sd.is_perfect_matching(theta, cls)


# --------------------------------------------------------------------------
# perfect matchings
# --------------------------------------------------------------------------

def test_petersen_matchings_golden(petersen):
    got = sd.enumerate_perfect_matchings(petersen)
    assert [tuple(sorted(m)) for m in got] == PETERSEN_MATCHINGS
    # classical: every edge of the Petersen graph lies in exactly two
    for e in range(15):
        assert sum(e in m for m in got) == 2
    # and distinct matchings meet in exactly one edge
    for i in range(6):
        for j in range(i + 1, 6):
            assert len(got[i] & got[j]) == 1


def test_matchings_match_oracle(theta, k4, k33, prism, cube, petersen, j3, dumbbell):
    for g in (theta, k4, k33, prism, cube, petersen, j3, dumbbell):
        want = oracles.perfect_matchings(g.vertex_count, edge_pairs(g))
        got = sd.enumerate_perfect_matchings(g)
        assert [tuple(sorted(m)) for m in got] == want


def test_matching_counts_match_counting_oracle(k33, cube, j5, j7, blanusa1, blanusa2):
    for g in (k33, cube, j5, j7, blanusa1, blanusa2):
        assert len(sd.enumerate_perfect_matchings(g)) == \
            oracles.count_perfect_matchings(g.vertex_count, edge_pairs(g))


def test_matching_enumeration_limit(petersen):
    got = sd.enumerate_perfect_matchings(petersen, limit=2)
    assert [tuple(sorted(m)) for m in got] == PETERSEN_MATCHINGS[:2]


def test_odd_graphs_have_no_matching():
    # no perfect matching on an odd vertex count
    assert oracles.count_perfect_matchings(3, [(0, 1), (1, 2)]) == 0


def test_is_perfect_matching(petersen):
    assert sd.is_perfect_matching(petersen, {0, 5, 9, 10, 12})
    assert not sd.is_perfect_matching(petersen, {0, 5, 9, 10})      # misses vertices
    assert not sd.is_perfect_matching(petersen, {0, 1, 9, 10, 12})  # edges 0,1 share vertex 0


# --------------------------------------------------------------------------
# two-factors and oddness
# --------------------------------------------------------------------------

def test_two_factor_circuits(petersen, k4, theta, dumbbell):
    for m in sd.enumerate_perfect_matchings(petersen):
        circuits = sd.two_factor_circuits(petersen, m)
        assert sorted(len(c) for c in circuits) == [5, 5]
        # circuits are edge-id lists partitioning the complement of m
        assert sorted(e for c in circuits for e in c) == sorted(set(range(15)) - m)
    k4_pm = sd.enumerate_perfect_matchings(k4)[0]
    assert [len(c) for c in sd.two_factor_circuits(k4, k4_pm)] == [4]
    # complement of one theta edge is a 2-circuit of parallel edges
    assert [len(c) for c in sd.two_factor_circuits(theta, frozenset({0}))] == [2]
    # dumbbell: the bridge is a matching, the loops are 1-circuits
    assert sd.two_factor_circuits(dumbbell, frozenset({1})) == [[0], [2]]


def test_oddness(petersen, k4, k33, prism, cube, j3, j5, j7, blanusa1, blanusa2):
    for g in (k4, k33, prism, cube):
        assert sd.oddness(g) == 0
    for g in (petersen, j3, j5, j7, blanusa1, blanusa2):
        assert sd.oddness(g) == 2


def test_is_snark(petersen, k4, theta, dumbbell, j3, j5, blanusa1, blanusa2):
    for g in (petersen, j3, j5, blanusa1, blanusa2):
        assert sd.is_snark(g)
    for g in (k4, theta, dumbbell):
        assert not sd.is_snark(g)


# --------------------------------------------------------------------------
# multipoles: parity and the stripped-graph equivalence
# --------------------------------------------------------------------------

def test_parity_report_on_four_pole(petersen):
    pole, _, _ = sd.remove_vertices(petersen, (0, 1))
    cols = sd.enumerate_colourings(pole)
    assert cols, "deleting adjacent vertices from Petersen leaves a colourable 4-pole"
    for col in cols:
        rep = sd.verify_parity(pole, col)
        assert rep.ok
        assert rep.free_end_count == 4
        assert sum(rep.counts) == 4
        assert all(c % 2 == 0 for c in rep.counts)


def test_parity_rejects_invalid_colouring(petersen):
    pole, _, _ = sd.remove_vertices(petersen, (0, 1))
    col = sd.three_edge_colour(pole)
    col[0] = 9
    with pytest.raises(sd.GraphError, match="invalid colouring"):
        sd.verify_parity(pole, col)


def test_parity_lemma_on_seeded_multipoles(petersen, j5, k33, cube, prism):
    """Each colour count on free ends has the parity of the pole order."""
    rng = random.Random(20260815)
    bases = [petersen, j5, k33, cube, prism]
    checked = 0
    for _ in range(50):
        base = rng.choice(bases)
        drop = rng.sample(range(base.vertex_count), rng.randint(1, 3))
        pole, _, _ = sd.remove_vertices(base, drop)
        free = len(pole.free_ends)
        for col in sd.enumerate_colourings(pole, limit=10):
            counts = [0, 0, 0]
            for e, end in pole.free_ends:
                counts[col[e] - 1] += 1
            assert all(c % 2 == free % 2 for c in counts)
            rep = sd.verify_parity(pole, col)
            assert rep.ok and tuple(counts) == rep.counts
            checked += 1
    assert checked > 50


def test_colourability_equals_stripped_graph_colourability(petersen, j5, k33, prism):
    """A multipole is colourable iff the graph left after deleting its
    dangling and isolated edges has a proper 3-edge-colouring."""
    cases = [
        (petersen, (0, 1)),
        (petersen, (0, 2, 7)),
        (petersen, (5,)),
        (j5, (5, 6, 7, 8, 9)),
        (k33, (0,)),
        (prism, (1, 4)),
    ]
    for base, drop in cases:
        pole, _, _ = sd.remove_vertices(base, drop)
        stripped = [tuple(pole.endpoints(e)) for e in range(pole.edge_count)
                    if None not in pole.endpoints(e)]
        ours = sd.three_edge_colour(pole) is not None
        theirs = oracles.proper_three_colourable(pole.vertex_count, stripped)
        assert ours == theirs
