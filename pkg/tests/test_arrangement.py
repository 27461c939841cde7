import random

from hypothesis import given, settings, strategies as st

from pdcross.arrangement import Arrangement
from pdcross.geometry import drawing_from_coordinates
from pdcross.model import drawings_equivalent

from oracles import euler_faces, random_plane_layout


def _layout(seed, n=6):
    pos, edges = random_plane_layout(random.Random(seed), n)
    return drawing_from_coordinates(edges, pos), edges


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_round_trip_through_arrangement(seed):
    d, _ = _layout(seed)
    a = Arrangement.from_drawing(d)
    a.check()
    assert drawings_equivalent(a.to_drawing(), d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_subdivide_then_smooth_restores(seed):
    d, edges = _layout(seed)
    a = Arrangement.from_drawing(d)
    e = sorted(edges)[seed % len(edges)]
    a.subdivide(e, "s", "p1", "p2")
    a.check()
    a.smooth("s", e, "p1")
    a.check()
    assert drawings_equivalent(a.to_drawing(), d)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_delete_then_readd_edge(seed):
    d, edges = _layout(seed)
    a = Arrangement.from_drawing(d)
    e = sorted(edges)[seed % len(edges)]
    u, v = a.edges[e]
    ku, kv = a.rot[u].index((e, 0)), a.rot[v].index((e, 1))
    r0, r1 = a.region_of[(e, 0)], a.region_of[(e, 1)]
    right = a.members_in_region(r1, skip=(u,)) if r0 != r1 else []
    outer_right = r0 != r1 and a.outer_rid == r1
    a.delete_edge(e)
    a.check()
    a.add_edge(e, u, ku, v, kv, to_new=right, outer_to_new=outer_right)
    a.check()
    assert drawings_equivalent(a.to_drawing(), d)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_region_count_follows_euler(seed):
    d, edges = _layout(seed, 7)
    a = Arrangement.from_drawing(d)
    comps = a.components()
    n = len(a.rot)
    # all components share one unbounded region on top of their own bounded faces
    assert len(a.regions()) == euler_faces(n, len(edges), len(comps)) - len(comps) + 1


def test_mirror_twice_is_identity():
    d, _ = _layout(7)
    a = Arrangement.from_drawing(d)
    a.mirror()
    assert drawings_equivalent(a.to_drawing(), d.global_mirror())
    a.mirror()
    assert drawings_equivalent(a.to_drawing(), d)


def test_add_point_and_connect():
    a = Arrangement()
    a.add_point("x")
    a.add_point("y")
    a.add_edge("e", "x", 0, "y", 0)
    a.check()
    assert a.edges == {"e": ("x", "y")}
    assert len(a.regions()) == 1
