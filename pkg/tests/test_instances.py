import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import segments_cross
from pdcross.extension import is_extendable
from pdcross.instances import (
    CriticalFamilyParams, expand_weights, gadget, gen_critical, gen_examples, random_pair, random_sketch,
)
from pdcross.model import is_conforming, validate_drawing, validate_witness


def test_critical_gadget_weights():
    for c in (3, 4):
        g = gadget(c)
        assert len(g.graph.vertices) == 8
        assert sorted({e.weight for e in g.graph.edges}) == [1, c, 2 * c + 3]
        assert len(g.graph.edges) == 4 + 4 + 4 + 4
        spokes = {e.id: e.weight for e in g.graph.edges}
        assert spokes["u2v2"] == spokes["u4v4"] == c
        assert spokes["u1v1"] == spokes["u3v3"] == 1


def test_critical_reference_drawings():
    f = gen_critical()
    assert f.k == 8
    assert f.d1.cost == 0 and f.d2.cost == 8
    assert validate_witness(f.d1).ok and validate_witness(f.d2).ok
    assert is_conforming(f.d1, f.gadget_straight, 0)
    assert is_conforming(f.d2, f.gadget_flipped, f.k)
    assert is_extendable(f.gadget_straight)
    assert not is_extendable(f.gadget_flipped)


def test_critical_stack_not_extendable():
    for copies in (1, 2):
        f = gen_critical(CriticalFamilyParams(copies=copies))
        assert len(f.instance.graph.vertices) == 4 * copies + 10
        assert validate_drawing(f.instance.drawing).ok
        assert not is_extendable(f.instance)


def test_critical_expansion():
    f = gen_critical(CriticalFamilyParams(expand_parallel=True))
    free = [e for e in f.instance.graph.edges if not e.predrawn]
    assert all(e.weight == 1 for e in free)
    base = gen_critical().instance
    assert len(f.instance.graph.edges) > len(base.graph.edges)
    assert sum(e.weight for e in f.instance.graph.edges) == sum(e.weight for e in base.graph.edges)


def test_critical_params_checked():
    with pytest.raises(ValueError):
        CriticalFamilyParams(c=2)
    with pytest.raises(ValueError):
        CriticalFamilyParams(copies=0)


def test_examples_are_valid():
    ex = gen_examples()
    assert len(ex) >= 14
    for name, e in ex.items():
        assert e.name == name
        assert validate_drawing(e.instance.drawing).ok, name
        if "extendable" in e.expected:
            assert is_extendable(e.instance) is e.expected["extendable"], name


def test_expand_keeps_predrawn():
    p = gen_examples()["k5-weighted"].instance
    e = expand_weights(p)
    assert {x.id for x in e.graph.edges if x.predrawn} == {x.id for x in p.graph.edges if x.predrawn}
    assert sum(x.weight for x in e.graph.edges) == sum(x.weight for x in p.graph.edges)


def test_random_pairs_deterministic():
    a = [random_pair(random.Random(3)) for _ in range(2)]
    assert a[0][0].graph == a[1][0].graph and a[0][1].graph == a[1][1].graph


def _straight_free_edges_fit(s) -> bool:
    if set(s.pos) != set(s.vertices):
        return False
    segs = list(s.h.values()) + list(s.g.values())
    for u, v in s.g.values():
        if not s.segment_ok(u, v):
            return False
    for (a, b), (c, d) in itertools.combinations(segs, 2):
        if {a, b} & {c, d}:
            continue
        if segments_cross(s.pos[a], s.pos[b], s.pos[c], s.pos[d]):
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(3, 6))
def test_straight_line_free_edges_extend(seed, n):
    rng = random.Random(seed)
    s = random_sketch(rng, n, n, p_h=0.5, p_g=0.4)
    p = s.instance("s")
    assert validate_drawing(p.drawing).ok
    if _straight_free_edges_fit(s):
        assert is_extendable(p)
