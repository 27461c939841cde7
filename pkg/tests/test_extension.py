import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pdcross.extension import (BudgetExceeded, SearchBudget, extend_planar, find_alternating_chain,
                               is_extendable, planar_drawing, validate_chain)
from pdcross.geometry import drawing_from_coordinates
from pdcross.model import (Edge, Multigraph, PredrawnGraph, drawings_equivalent, empty_drawing, restrict,
                           trivial_witness, validate_drawing)

from oracles import random_plane_layout


def _abstract(n, edges):
    vs = tuple(f"v{i}" for i in range(n))
    return Multigraph(vs, tuple(Edge(f"e{k}", f"v{u}", f"v{v}") for k, (u, v) in enumerate(edges)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.data())
def test_empty_h_matches_networkx_planarity(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    g = _abstract(n, edges)
    ref = nx.Graph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from(edges)
    d = planar_drawing(g)
    assert (d is not None) == nx.check_planarity(ref)[0]
    if d is not None:
        assert validate_drawing(d).ok


def _embedding(pos, edges):
    emb = nx.PlanarEmbedding()
    for v, p in pos.items():
        emb.add_node(v)
        nbrs = [w for u, w in edges.values() if u == v] + [u for u, w in edges.values() if w == v]
        # counter-clockwise order by angle
        nbrs.sort(key=lambda w: math.atan2(pos[w][1] - p[1], pos[w][0] - p[0]))
        prev = None
        for w in nbrs:
            emb.add_half_edge(v, w, cw=prev) if prev is not None else emb.add_half_edge(v, w)
            prev = w
    emb.check_structure()
    return emb


def _share_face(emb, u, v) -> bool:
    seen = set()
    for a, b in emb.edges():
        if (a, b) in seen:
            continue
        face = emb.traverse_face(a, b, mark_half_edges=seen)
        if u in face and v in face:
            return True
    return False


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_one_free_edge_matches_face_sharing(seed):
    rng = random.Random(seed)
    pos, edges = random_plane_layout(rng, rng.randint(4, 7), tries=200)
    g_nx = nx.Graph([uv for uv in edges.values()])
    if g_nx.number_of_nodes() != len(pos) or not nx.is_connected(g_nx):
        return
    emb = _embedding(pos, edges)
    missing = [(u, v) for u, v in itertools.combinations(sorted(pos), 2) if not g_nx.has_edge(u, v)]
    if not missing:
        return
    u, v = rng.choice(missing)
    es = tuple(Edge(k, a, b, True) for k, (a, b) in edges.items()) + (Edge("new", u, v),)
    p = PredrawnGraph(Multigraph(tuple(sorted(pos)), es), drawing_from_coordinates(edges, pos))
    assert is_extendable(p) == _share_face(emb, u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_hidden_edges_of_a_plane_layout_can_be_redrawn(seed):
    rng = random.Random(seed)
    pos, edges = random_plane_layout(rng, rng.randint(3, 8), tries=40)
    keep = {k: uv for k, uv in edges.items() if rng.random() < 0.5}
    es = tuple(Edge(k, u, v, k in keep) for k, (u, v) in edges.items())
    drawn = {x for uv in keep.values() for x in uv} | {v for v in pos if rng.random() < 0.3}
    d = drawing_from_coordinates(keep, {v: pos[v] for v in drawn})
    p = PredrawnGraph(Multigraph(tuple(sorted(pos)), es), d)
    full = extend_planar(p)
    assert full is not None
    sub = restrict(trivial_witness(p.graph, full), p.h_vertices, p.h_edge_ids())
    assert drawings_equivalent(sub, p.drawing)


def test_fig3_not_extendable_and_chain_validates(corpus):
    p = corpus["fig3-instance"].instance
    assert extend_planar(p) is None
    ch = find_alternating_chain(p)
    if ch is not None:
        assert validate_chain(p, ch)


def test_budget_exceeded_raises(corpus):
    p = corpus["fig3-instance"].instance
    with pytest.raises(BudgetExceeded):
        extend_planar(p, SearchBudget(max_nodes=1))
    with pytest.raises(BudgetExceeded):
        extend_planar(p, SearchBudget(max_vertices=2))


def test_empty_graph_is_extendable():
    p = PredrawnGraph(Multigraph(("a",), ()), empty_drawing())
    assert is_extendable(p)
