import xml.etree.ElementTree as ET

from pdcross.solver import SolveOptions, solve_pdcr
from pdcross.svg import layout, render_svg

NS = "{http://www.w3.org/2000/svg}"


def _count(svg: str, tag: str, cls: str) -> int:
    root = ET.fromstring(svg)
    return sum(1 for el in root.iter(NS + tag) if el.get("class") == cls)


def test_predrawn_part_rendered(corpus):
    p = corpus["triangle-point"].instance
    svg = render_svg(p.drawing, "tp")
    assert _count(svg, "circle", "vertex") == len(p.drawing.rotations)
    assert _count(svg, "g", "crossing") == 0
    assert render_svg(p.drawing, "tp") == svg


def test_witness_crossings_marked(corpus):
    for name in ("k5", "k33", "fig3-instance"):
        r = solve_pdcr(corpus[name].instance, SolveOptions(max_q=2))
        svg = render_svg(r.witness, name)
        assert _count(svg, "g", "crossing") == len(r.witness.crossings) == r.q_star


def test_layout_is_finite(corpus):
    d = corpus["fig4-framing"].instance.drawing
    pos = layout(d)
    assert set(d.rotations) <= set(pos)
    assert all(abs(x) < 1e6 and abs(y) < 1e6 for x, y in pos.values())
