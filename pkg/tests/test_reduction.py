import pytest

from pdcross.extension import is_extendable
from pdcross.model import GraphError, validate_drawing
from pdcross.reduction import (
    CASE_LETTER, RegionRejected, apply_reduction, contract_region, cycle_order,
    find_candidate_region, host_instance, is_flippable, lift_drawing, parse_log_line,
)
from pdcross.solver import SolveOptions, solve_pdcr


def _region(corpus, name):
    ex = corpus[name]
    return ex.instance, ex.extras["region"], ex.extras["cycle"]


def test_fig6_flippability_before_and_after(corpus):
    p, region, cycle = _region(corpus, "fig6-flip")
    exp = corpus["fig6-flip"].expected
    before = is_flippable(p, cycle, region)
    assert before.flippable is exp["flippable_before"]
    reduced, cmap = contract_region(p, region, cycle)
    v_i = cmap[sorted(region)[0]]
    after = is_flippable(reduced, cycle, {v_i})
    assert after.flippable is exp["flippable_after"]


def test_fig6_case_and_log_line(corpus):
    p, region, cycle = _region(corpus, "fig6-flip")
    out = apply_reduction(p, region, cycle)
    assert not out.infeasible
    step = out.step
    assert CASE_LETTER[step.case] == corpus["fig6-flip"].expected["case"]
    fields = parse_log_line(step.log_line())
    assert fields["case"] == "e"
    assert set(fields["I"]) == set(region)
    assert fields["C"] == tuple(cycle)
    assert len(fields["TI"]) == 3
    assert validate_drawing(step.reduced.drawing).ok
    assert len(step.reduced.graph.vertices) < len(p.graph.vertices)


def test_reduction_preserves_optimum_and_lifts(corpus):
    p, region, cycle = _region(corpus, "fig6-flip")
    step = apply_reduction(p, region, cycle).step
    opts = SolveOptions(max_q=3)
    r0 = solve_pdcr(p, opts)
    r1 = solve_pdcr(step.reduced, opts)
    assert r0.q_star == r1.q_star
    lifted = lift_drawing(step, r1.witness)
    assert lifted.cost == r1.q_star


def test_contraction_map(corpus):
    p, region, cycle = _region(corpus, "fig3-instance")
    reduced, cmap = contract_region(p, region, cycle)
    v_i = {cmap[v] for v in region}
    assert len(v_i) == 1
    internal = [e.id for e in p.graph.edges if e.u in region and e.v in region]
    assert internal and all(cmap[e] is None for e in internal)
    ids = {e.id: e for e in reduced.graph.edges}
    assert all(ids[e].uncrossable for e in cycle)


def test_reduction_keeps_extendability(corpus):
    _, region, cycle = _region(corpus, "fig3-instance")
    for name in ("fig3-instance", "fig3-flipped"):
        p = corpus[name].instance
        out = apply_reduction(p, region, cycle)
        assert not out.infeasible
        assert is_extendable(out.step.reduced) == is_extendable(p)


def test_host_instance_extendable(corpus):
    p, region, cycle = _region(corpus, "fig3-instance")
    cvs, _ = cycle_order(p.graph, cycle)
    assert is_extendable(host_instance(p, set(region) | set(cvs)))


def test_bad_regions_rejected(corpus):
    p, region, cycle = _region(corpus, "fig3-instance")
    with pytest.raises(GraphError):
        apply_reduction(p, list(region)[:3], cycle)
    with pytest.raises(GraphError):
        apply_reduction(p, list(region) + ["c1"], cycle)
    with pytest.raises(GraphError):
        parse_log_line("solve q=1")
    assert issubclass(RegionRejected, GraphError)


def test_candidate_discovery(corpus):
    p, region, _ = _region(corpus, "fig3-instance")
    found = find_candidate_region(p)
    assert found is not None
    assert find_candidate_region(corpus["k4"].instance) is None
