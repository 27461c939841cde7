import random

import networkx as nx
from hypothesis import given, settings, strategies as st

from pdcross.framing import (build_framing, check_frame_invariants, framing_route, iter_extended_framings,
                             parse_framing_markers, serialize_framing, treewidth_upper_bound)
from pdcross.instances import random_pair, random_sketch
from pdcross.obstructions import pd_subgraph_of_subdivision


def _frame_ok(f) -> bool:
    g = nx.Graph()
    for e in f.graph.edges:
        if e.id in f.frame_edges and e.u != e.v:
            g.add_edge(e.u, e.v)
    return nx.check_planarity(g)[0] and len(g) > 3 and nx.node_connectivity(g) >= 3


def test_fig4_framing_counts(corpus):
    p = corpus["fig4-framing"].instance
    f = build_framing(p)
    # two predrawn components need exactly one connector edge
    assert len(f.connector_edges) == 1
    # every drawn edge, connector included, gets three paths of length three
    drawn = len(p.drawing.edges) + len(f.connector_edges)
    assert len(f.triplets) == drawn
    assert all(len(paths) == 3 and all(len(path) == 3 for path in paths) for paths in f.triplets.values())
    assert set(f.framing_cycles) >= set(p.drawing.rotations)
    assert _frame_ok(f)


def test_source_graph_survives_in_framing(corpus):
    p = corpus["fig4-framing"].instance
    f = build_framing(p)
    ids = {e.id for e in f.graph.edges}
    assert {e.id for e in p.graph.edges} <= ids


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_random_frames_planar_and_three_connected(seed):
    rng = random.Random(seed)
    p = random_sketch(rng, rng.randint(4, 8), rng.randint(4, 6), p_h=0.6).instance("r")
    if len(p.drawing.rotations) < 4 or not p.drawing.edges:
        return
    f = build_framing(p)
    rep = check_frame_invariants(f)
    assert rep.ok
    assert _frame_ok(f)


def test_serialized_markers_round_trip(corpus):
    f = build_framing(corpus["fig4-framing"].instance)
    m = parse_framing_markers(serialize_framing(f))
    assert m["frame"] == set(f.frame_edges)
    assert set(m["triplets"]) == set(f.triplets)
    assert len(m["connectors"]) == len(f.connector_edges)


def test_treewidth_bound_of_small_graphs(corpus):
    assert treewidth_upper_bound(corpus["k5"].instance.graph) == 4
    assert treewidth_upper_bound(corpus["k4"].instance.graph) == 3


def test_extended_framings_start_with_plain_shape(corpus):
    p = corpus["fig4-framing"].instance
    fs = list(iter_extended_framings(p, limit=50))
    assert fs
    assert all(_frame_ok(f) for f in fs[:10])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_routes_agree_on_random_pairs(seed):
    p1, p2 = random_pair(random.Random(seed))
    assert framing_route(p1, p2) == pd_subgraph_of_subdivision(p1, p2)


def test_fig9_pair_routes(corpus):
    ex = corpus["fig9-pair"]
    assert framing_route(ex.instance, ex.extras["partner"])
    assert not framing_route(ex.extras["partner"], ex.instance)
