import random

import pytest

from oracles import bipartite_edges, classical_crossing_number, complete_edges
from pdcross.instances import expand_weights
from pdcross.model import (
    Edge, GraphError, Multigraph, PredrawnGraph, empty_drawing, is_conforming, validate_witness,
)
from pdcross.solver import (
    INFEASIBLE, OPTIMAL, SolveOptions, lower_bound, realise_pairs, solve_pdcr,
    subdivide_once, subdivision_invariance_check,
)


def abstract(vertices, edges, name="g"):
    es = tuple(Edge(i, u, v, False, False, w) for i, (u, v, w) in sorted(edges.items()))
    return PredrawnGraph(Multigraph(tuple(vertices), es), empty_drawing(), {}, name)


def random_graph(rng, n, m):
    vs = [f"v{i}" for i in range(n)]
    pool = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
    rng.shuffle(pool)
    return vs, {f"{a}{b}": (a, b, 1) for a, b in pool[:m]}


@pytest.mark.parametrize("name, q", [("k4", 0), ("k5", 1), ("k33", 1), ("k5-weighted", 1)])
def test_classical_corpus(corpus, name, q):
    ex = corpus[name]
    assert ex.expected["qstar"] == q
    r = solve_pdcr(ex.instance, SolveOptions(max_q=3))
    assert r.status == OPTIMAL and r.q_star == q
    g = ex.instance.graph
    edges = {e.id: (e.u, e.v, e.weight) for e in g.edges}
    assert classical_crossing_number(g.vertices, edges, 3) == q
    assert validate_witness(r.witness).ok
    assert is_conforming(r.witness, ex.instance, q)


def test_random_abstract_graphs_match_oracle():
    rng = random.Random(7)
    seen = set()
    for _ in range(16):
        vs, es = random_graph(rng, 6, rng.randint(10, 13))
        want = classical_crossing_number(vs, es, 2)
        r = solve_pdcr(abstract(vs, es), SolveOptions(max_q=2))
        got = r.q_star if r.status == OPTIMAL else None
        assert got == want, (vs, es)
        seen.add(want)
    assert {0, 1} <= seen


def test_euler_lower_bound():
    vs, es = complete_edges(6)
    assert lower_bound(abstract(vs, es)) == 3
    vs, es = bipartite_edges(3, 3)
    assert lower_bound(abstract(vs, es)) >= 0


def test_levels_are_monotone(corpus):
    p = corpus["k5"].instance
    full = solve_pdcr(p, SolveOptions(max_q=3))
    assert full.q_star == 1
    short = solve_pdcr(p, SolveOptions(max_q=0))
    assert short.status == INFEASIBLE
    assert short.lower_bound == 1
    for k in range(1, 4):
        r = solve_pdcr(p, SolveOptions(max_q=k))
        assert r.status == OPTIMAL and r.q_star == 1


def test_fig3_needs_one_crossing(corpus):
    p = corpus["fig3-instance"].instance
    assert solve_pdcr(p, SolveOptions(max_q=0)).status == INFEASIBLE
    r = solve_pdcr(p, SolveOptions(max_q=2))
    assert r.q_star == 1
    assert is_conforming(r.witness, p, 1)


def test_cap_and_simplicity(corpus):
    for name in ("k5", "k33", "fig3-instance", "fig10-triangle"):
        p = corpus[name].instance
        base = solve_pdcr(p, SolveOptions(max_q=2))
        for opts in (SolveOptions(max_q=2, per_edge_cap=2), SolveOptions(max_q=2, per_edge_cap=1),
                     SolveOptions(max_q=2, simple=True)):
            r = solve_pdcr(p, opts)
            assert (r.status, r.q_star) == (base.status, base.q_star), (name, opts)


def test_weighted_equals_parallel(corpus):
    p = corpus["k5-weighted"].instance
    e = expand_weights(p)
    assert all(x.weight == 1 for x in e.graph.edges)
    assert len(e.graph.edges) == 10 + 1 + 2
    a = solve_pdcr(p, SolveOptions(max_q=3))
    b = solve_pdcr(e, SolveOptions(max_q=3))
    assert a.q_star == b.q_star == 1


def test_subdivision_invariance(corpus):
    for name in ("k5", "fig3-instance", "triangle-point"):
        assert subdivision_invariance_check(corpus[name].instance, SolveOptions(max_q=2))
    s = subdivide_once(corpus["k4"].instance)
    assert len(s.graph.edges) == 12


def test_reduction_route_agrees(corpus):
    for name, ex in corpus.items():
        if "qstar" not in ex.expected:
            continue
        a = solve_pdcr(ex.instance, SolveOptions(max_q=2))
        b = solve_pdcr(ex.instance, SolveOptions(max_q=2, use_reduction=True))
        assert (a.status, a.q_star) == (b.status, b.q_star) == (OPTIMAL, ex.expected["qstar"]), name


def test_realise_pairs(corpus):
    p = corpus["k4"].instance
    w = realise_pairs(p, [])
    assert w is not None and w.cost == 0
    assert realise_pairs(corpus["k5"].instance, []) is None
    with pytest.raises(GraphError):
        SolveOptions(max_q=-1)
    with pytest.raises(GraphError):
        SolveOptions(per_edge_cap=0)
