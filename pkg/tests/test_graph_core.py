"""Containers, text formats, and the structural predicates."""

import random

import networkx as nx
import pytest

import snarkdefect as sd
from oracles import edge_pairs

PETERSEN_G6 = "IheA@GUAo"

PETERSEN_EDGES = (
    (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4),
    (3, 8), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
)


def relabelled(g, perm):
    pairs = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges)
    return sd.CubicGraph(g.vertex_count, pairs)


# --------------------------------------------------------------------------
# construction and validation
# --------------------------------------------------------------------------

def test_petersen_container_basics(petersen):
    g = petersen
    assert g.vertex_count == 10
    assert g.edge_count == 15
    assert g.edges == PETERSEN_EDGES
    assert g.is_graph
    assert g.free_ends == ()
    for v in range(10):
        assert len(g.incident_edges(v)) == 3
    assert g.endpoints(0) == (0, 1)
    assert g.other_endpoint(0, 0) == 1
    assert g.other_endpoint(0, 1) == 0
    assert g.adjacency()[0] == [(1, 0), (4, 1), (5, 2)]


def test_incident_ends_are_darts(petersen):
    # every (edge, end) dart at v points back at v
    for v in range(10):
        for e, end in petersen.incident_ends(v):
            assert petersen.endpoints(e)[end] == v


def test_not_cubic_rejected():
    with pytest.raises(sd.NotCubicError, match="4 incident"):
        sd.Multipole(1, [(0, None)] * 4)
    with pytest.raises(sd.NotCubicError, match="2 incident"):
        sd.Multipole(1, [(0, None)] * 2)


def test_vertex_out_of_range_rejected():
    with pytest.raises(sd.GraphError, match="out of range"):
        sd.Multipole(2, [(0, 1), (0, 1), (0, None), (1, None), (5, None)])


def test_cubic_graph_rejects_free_ends():
    with pytest.raises((sd.NotCubicError, sd.ConnectorError)):
        sd.CubicGraph(1, [(0, None)] * 3)


def test_default_connector_covers_all_free_ends():
    m = sd.Multipole(1, [(0, None), (0, None), (0, None)])
    assert m.connectors == (("free", ((0, 1), (1, 1), (2, 1))),)
    assert m.connector("free") == ((0, 1), (1, 1), (2, 1))


def test_explicit_connectors_must_cover():
    with pytest.raises(sd.ConnectorError, match="not covered"):
        sd.Multipole(1, [(0, None)] * 3, ())
    with pytest.raises(sd.ConnectorError):
        # an end listed twice
        sd.Multipole(1, [(0, None)] * 3,
                     [("a", [(0, 1), (0, 1)]), ("b", [(1, 1), (2, 1)])])


def test_loops_and_parallel_edges_allowed(theta, dumbbell):
    assert theta.edge_count == 3
    assert dumbbell.endpoints(0) == (0, 0)
    assert dumbbell.incident_edges(0) == (0, 0, 1)  # loop twice


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------

def test_graph6_petersen_golden(petersen):
    assert sd.write_graph6(petersen) == PETERSEN_G6
    assert sd.parse_graph6(PETERSEN_G6).edges == PETERSEN_EDGES


def test_graph6_roundtrip_suite(petersen, k33, prism, cube, j5, blanusa1, blanusa2):
    for g in (petersen, k33, prism, cube, j5, blanusa1, blanusa2):
        assert sd.parse_graph6(sd.write_graph6(g)).edges == g.edges


def test_graph6_header_and_whitespace(petersen):
    assert sd.parse_graph6(">>graph6<<" + PETERSEN_G6).edges == petersen.edges
    assert sd.parse_graph6(PETERSEN_G6 + "\n").edges == petersen.edges


def test_graph6_rejects_junk():
    with pytest.raises(sd.FormatError):
        sd.parse_graph6("I" + "\x1f" * 9)
    with pytest.raises(sd.NotCubicError):
        sd.parse_graph6("A_")  # a single edge: degree 1


def test_graph6_cannot_encode_multigraphs(theta, dumbbell):
    with pytest.raises(sd.FormatError, match="parallel"):
        sd.write_graph6(theta)
    with pytest.raises(sd.FormatError):
        sd.write_graph6(dumbbell)


def test_graph6_matches_networkx(petersen, j5, blanusa1):
    for g in (petersen, j5, blanusa1):
        h = nx.from_graph6_bytes(sd.write_graph6(g).encode())
        assert sorted(map(tuple, map(sorted, h.edges()))) == sorted(g.edges)


# --------------------------------------------------------------------------
# edge-list text format
# --------------------------------------------------------------------------

def test_edge_list_roundtrip(petersen):
    text = sd.write_edge_list(petersen)
    back = sd.parse_edge_list(text)
    assert back.edges == petersen.edges
    assert back.is_graph


def test_edge_list_roundtrip_with_connectors():
    z = sd.z_pole()
    back = sd.parse_edge_list(sd.write_edge_list(z))
    assert back.edges == z.edges
    assert back.connectors == z.connectors


def test_edge_list_comments_and_errors():
    m = sd.parse_edge_list("# theta\nvertices 2\n0 1\n0 1\n0 1\n")
    assert m.vertex_count == 2 and m.edge_count == 3
    with pytest.raises(sd.FormatError, match="line 2"):
        sd.parse_edge_list("vertices 2\n0 nope\n")


# --------------------------------------------------------------------------
# predicates
# --------------------------------------------------------------------------

def test_girth_goldens(petersen, k4, k33, theta, dumbbell, prism, cube, j5, j7):
    assert sd.girth(petersen) == 5
    assert sd.girth(k4) == 3
    assert sd.girth(k33) == 4
    assert sd.girth(theta) == 2
    assert sd.girth(dumbbell) == 1
    assert sd.girth(prism) == 3
    assert sd.girth(cube) == 4
    assert sd.girth(j5) == 5
    assert sd.girth(j7) == 6


def test_bridges(petersen, dumbbell):
    assert sd.bridges(dumbbell) == [1]
    assert sd.bridges(petersen) == []
    # cutting two of vertex 0's edges leaves the third as a bridge
    assert 2 in sd.bridges(petersen, removed=(0, 1))
    assert not sd.is_bridgeless(dumbbell)
    assert sd.is_bridgeless(petersen)


def test_connectivity(petersen, dumbbell):
    two_thetas = sd.CubicGraph(4, ((0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)))
    assert sd.is_connected(petersen)
    assert not sd.is_connected(two_thetas)
    assert sorted(map(sorted, sd.connected_components(two_thetas))) == [[0, 1], [2, 3]]
    assert sd.is_two_connected(petersen)
    assert not sd.is_two_connected(dumbbell)
    assert not sd.is_two_connected(two_thetas)


def test_bipartite(petersen, k4, k33, cube, theta, prism):
    assert sd.is_bipartite(k33)
    assert sd.is_bipartite(cube)
    assert sd.is_bipartite(theta)
    assert not sd.is_bipartite(petersen)
    assert not sd.is_bipartite(k4)
    assert not sd.is_bipartite(prism)


def test_cyclic_edge_connectivity(petersen, k4, theta, j5, blanusa1, j7):
    assert sd.cyclic_edge_connectivity(petersen, 6) == 5
    assert sd.cyclic_edge_connectivity(j5, 6) == 5
    assert sd.cyclic_edge_connectivity(blanusa1, 6) == 4
    # below any cycle-separating cut, the probe caps out
    assert sd.cyclic_edge_connectivity(petersen, 3) is sd.EXCEEDS_LIMIT
    # K4 and theta admit no cycle-separating cut at all
    assert sd.cyclic_edge_connectivity(k4, 6) is sd.EXCEEDS_LIMIT
    assert sd.cyclic_edge_connectivity(theta, 6) is sd.EXCEEDS_LIMIT
    with pytest.raises(sd.SizeGateError):
        sd.cyclic_edge_connectivity(j7, 6, max_vertices=10)


def test_bipartite_double(petersen, k4, theta, cube):
    d = sd.bipartite_double(petersen)
    assert d.vertex_count == 20 and d.edge_count == 30
    assert sd.is_bipartite(d)
    assert sd.is_connected(d)
    assert sd.girth(d) == 6
    # the double cover of K4 is the cube
    assert sd.is_isomorphic(sd.bipartite_double(k4), cube)
    # bipartite input doubles to two disjoint copies
    assert len(sd.connected_components(sd.bipartite_double(theta))) == 2


# --------------------------------------------------------------------------
# vertex deletion
# --------------------------------------------------------------------------

def test_remove_vertices(petersen):
    m, vmap, emap = sd.remove_vertices(petersen, (0, 1))
    assert m.vertex_count == 8
    assert m.edge_count == 14  # edge (0,1) vanished, four ends dangle
    assert len(m.free_ends) == 4
    assert m.connectors[0][0] == "cut"
    assert 0 not in emap  # the fully-internal edge has no image
    assert vmap == {v: v - 2 for v in range(2, 10)}
    # surviving edges keep their endpoints, renumbered
    for old, new in emap.items():
        a, b = petersen.endpoints(old)
        na, nb = m.endpoints(new)
        assert na == (None if a in (0, 1) else vmap[a])
        assert nb == (None if b in (0, 1) else vmap[b])


def test_remove_vertices_out_of_range(petersen):
    with pytest.raises(sd.GraphError, match="out of range"):
        sd.remove_vertices(petersen, (0, 99))


# --------------------------------------------------------------------------
# end references and junctions
# --------------------------------------------------------------------------

def test_endref_parse():
    r = sd.EndRef.parse("0:e17.1")
    assert (r.part, r.edge, r.end) == (0, 17, 1)
    r = sd.EndRef.parse("2:cut[3]")
    assert (r.part, r.connector, r.index) == (2, "cut", 3)
    with pytest.raises(sd.WiringError):
        sd.EndRef.parse("garbage")


def test_wiring_spec_parse_matches_of():
    text = "join 0:e0.1 1:e0.0"
    parsed = sd.WiringSpec.parse(text)
    built = sd.WiringSpec.of((sd.EndRef.edge_end(0, 0, 1), sd.EndRef.edge_end(1, 0, 0)))
    assert parsed == built


def test_junction_two_tripoles_make_theta(theta):
    t0, t1 = sd.trivial_tripole(), sd.trivial_tripole()
    w = sd.WiringSpec.of(*[
        (sd.EndRef.conn(0, f"r{k}", 0), sd.EndRef.conn(1, f"r{k}", 0))
        for k in range(3)
    ])
    joined = sd.junction((t0, t1), w).to_graph()
    assert sd.canonical_form(joined) == sd.canonical_form(theta)


def test_junction_rejects_vertex_free_circle():
    d0, d1 = sd.trivial_dipole(), sd.trivial_dipole()
    w = sd.WiringSpec.of(
        (sd.EndRef.conn(0, "a", 0), sd.EndRef.conn(1, "b", 0)),
        (sd.EndRef.conn(0, "b", 0), sd.EndRef.conn(1, "a", 0)),
    )
    with pytest.raises(sd.WiringError, match="circle"):
        sd.junction((d0, d1), w)


def test_junction_rejects_reused_end():
    t0, t1, t2 = (sd.trivial_tripole() for _ in range(3))
    w = sd.WiringSpec.of(
        (sd.EndRef.conn(0, "r0", 0), sd.EndRef.conn(1, "r0", 0)),
        (sd.EndRef.conn(0, "r0", 0), sd.EndRef.conn(2, "r0", 0)),
    )
    with pytest.raises(sd.WiringError):
        sd.junction((t0, t1, t2), w)


def test_junction_keeps_unwired_ends_free():
    t0, t1 = sd.trivial_tripole(), sd.trivial_tripole()
    w = sd.WiringSpec.of((sd.EndRef.conn(0, "r0", 0), sd.EndRef.conn(1, "r0", 0)))
    m = sd.junction((t0, t1), w)
    assert len(m.free_ends) == 4
    with pytest.raises((sd.NotCubicError, sd.ConnectorError, sd.GraphError)):
        m.to_graph()


# --------------------------------------------------------------------------
# isomorphism
# --------------------------------------------------------------------------

def test_canonical_form_is_relabelling_invariant(petersen, j5):
    rng = random.Random(20260815)
    for g in (petersen, j5):
        base = sd.canonical_form(g)
        for _ in range(5):
            perm = list(range(g.vertex_count))
            rng.shuffle(perm)
            assert sd.canonical_form(relabelled(g, perm)) == base


def test_is_isomorphic(petersen, k33, prism, cube, k4):
    assert sd.is_isomorphic(petersen, relabelled(petersen, [3, 1, 4, 0, 5, 9, 2, 6, 8, 7]))
    assert not sd.is_isomorphic(k33, prism)
    assert not sd.is_isomorphic(petersen, cube)  # sizes differ
    assert not sd.is_isomorphic(k4, prism)


def test_isomorphism_agrees_with_networkx(petersen, j5, blanusa1, blanusa2):
    assert not sd.is_isomorphic(blanusa1, blanusa2)
    g1 = nx.Graph(list(blanusa1.edges))
    g2 = nx.Graph(list(blanusa2.edges))
    assert not nx.is_isomorphic(g1, g2)


def test_canonical_form_size_gate():
    big = sd.flower_snark(17)  # 68 vertices
    with pytest.raises(sd.SizeGateError):
        sd.canonical_form(big)


def test_edge_pairs_helper(petersen):
    assert edge_pairs(petersen) == list(PETERSEN_EDGES)
