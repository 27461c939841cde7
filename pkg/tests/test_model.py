import random

import pytest
from hypothesis import given, settings, strategies as st

from pdcross.geometry import drawing_from_coordinates, witness_from_coordinates
from pdcross.model import (Edge, GraphError, Multigraph, PlaneDrawing, PredrawnGraph, drawings_equivalent,
                           is_conforming, make_graph, rev, trace_orbits, validate_drawing, validate_witness)

from oracles import euler_faces, random_plane_layout, straight_crossings

TRI = {"a": ("x", "y"), "b": ("y", "z"), "c": ("z", "x")}
TRI_POS = {"x": (0, 0), "y": (2, 0), "z": (1, 2)}


def test_edge_basics():
    e = Edge("e", "u", "v")
    assert e.ends == ("u", "v")
    assert e.other("u") == "v"
    assert e.weight == 1 and not e.predrawn


def test_multigraph_rejects_unknown_vertex():
    with pytest.raises(GraphError):
        Multigraph(("u",), (Edge("e", "u", "v"),))


def test_multigraph_parallel_edges_and_degree():
    g = make_graph(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")])
    assert g.degree("u") == 2
    assert g.neighbors("u") == {"v"}


def test_rev_is_involution():
    assert rev(rev(("e", 0))) == ("e", 0)


def test_triangle_has_two_faces():
    d = drawing_from_coordinates(TRI, TRI_POS)
    assert validate_drawing(d).ok
    assert len(d.faces()) == 2


def test_mirror_is_equivalent_but_changes_rotation():
    d = drawing_from_coordinates({"a": ("o", "p"), "b": ("o", "q"), "c": ("o", "r")},
                                 {"o": (0, 0), "p": (1, 0), "q": (0, 1), "r": (-1, -1)})
    m = d.global_mirror()
    assert drawings_equivalent(d, m)
    assert m.effective_rotations()["o"] == tuple(reversed(d.effective_rotations()["o"]))


def test_equivalence_distinguishes_nesting():
    h = dict(TRI, d=("u", "w"), e=("w", "t"), f=("t", "u"))
    inside = dict(TRI_POS, u=(0.8, 0.4), w=(1.2, 0.4), t=(1, 0.8))
    outside = dict(TRI_POS, u=(5, 0), w=(6, 0), t=(5.5, 1))
    assert not drawings_equivalent(drawing_from_coordinates(h, inside), drawing_from_coordinates(h, outside))


def test_predrawn_graph_requires_drawing_of_h():
    g = Multigraph(("x", "y", "z"), tuple(Edge(k, u, v, True) for k, (u, v) in TRI.items()))
    d = drawing_from_coordinates({"a": TRI["a"]}, TRI_POS)
    with pytest.raises(GraphError):
        PredrawnGraph(g, d)


def test_witness_from_coordinates_counts_k4_crossing():
    g = make_graph("abcd", [("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("da", "d", "a"),
                            ("ac", "a", "c"), ("bd", "b", "d")])
    w = witness_from_coordinates(g, {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)})
    assert w.cost == 1
    assert validate_witness(w).ok


def test_conforming_respects_budget_and_h():
    g = Multigraph(("x", "y", "z", "s", "t"),
                   tuple(Edge(k, u, v, True) for k, (u, v) in TRI.items()) + (Edge("st", "s", "t"),))
    p = PredrawnGraph(g, drawing_from_coordinates(TRI, TRI_POS))
    pos = dict(TRI_POS, s=(1, 0.5), t=(1, -1))
    w = witness_from_coordinates(g, pos)
    assert w.cost == 1
    assert is_conforming(w, p, 1)
    assert not is_conforming(w, p, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 8))
def test_face_count_matches_euler(seed, n):
    pos, edges = random_plane_layout(random.Random(seed), n)
    d = drawing_from_coordinates(edges, pos)
    assert validate_drawing(d).ok
    used = {v for uv in edges.values() for v in uv}
    comps = Multigraph(tuple(sorted(used)), tuple(Edge(k, u, v) for k, (u, v) in edges.items())).components()
    # every component with edges contributes its own faces; the shared unbounded region counts once per component
    nontrivial = [c for c in comps if len(c) > 1]
    expected = sum(euler_faces(len(c), sum(1 for u, v in edges.values() if u in c), 1) for c in nontrivial)
    assert len(trace_orbits(d.edges, d.effective_rotations())) == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_straight_layout_witness_cost_matches_segment_count(seed):
    rng = random.Random(seed)
    pos, edges = random_plane_layout(rng, 6)
    extra = [(u, v) for u in pos for v in pos if u < v and (u, v) not in edges.values()
             and (v, u) not in edges.values()]
    rng.shuffle(extra)
    edges = dict(edges, **{f"x{k}": uv for k, uv in enumerate(extra[:2])})
    g = Multigraph(tuple(sorted(pos)), tuple(Edge(k, u, v) for k, (u, v) in edges.items()))
    w = witness_from_coordinates(g, pos)
    assert w.cost == straight_crossings(pos, edges)
    assert validate_witness(w).ok


def test_validate_drawing_flags_bad_rotation():
    d = drawing_from_coordinates(TRI, TRI_POS)
    rot = dict(d.rotations)
    rot["x"] = rot["x"][:1]
    assert not validate_drawing(PlaneDrawing(d.edges, rot, d.outer, d.containment)).ok
