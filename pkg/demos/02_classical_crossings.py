"""
Classical crossing numbers
==========================

With nothing predrawn the solver computes the ordinary (weighted) crossing
number. K6 needs three crossings and takes a minute or so; pass ``--k6`` to
include it.
"""

import itertools
import sys

from pdcross import Edge, Multigraph, PredrawnGraph
from pdcross.instances import gen_examples
from pdcross.model import empty_drawing
from pdcross.solver import SolveOptions, solve_pdcr
from pdcross.svg import emit_svg

ex = gen_examples()
graphs = [ex[n].instance for n in ("k4", "k5", "k33", "k5-weighted")]
if "--k6" in sys.argv:
    vs = tuple(f"k{i}" for i in range(1, 7))
    es = tuple(Edge(u + v, u, v) for u, v in itertools.combinations(vs, 2))
    graphs.append(PredrawnGraph(Multigraph(vs, es), empty_drawing(), {}, "k6"))

for p in graphs:
    r = solve_pdcr(p, SolveOptions(max_q=3))
    pairs = [(c.edge_a, c.edge_b) for c in r.witness.crossings]
    print(f"{p.name:12s} qstar={r.q_star} crossings={pairs}")

# the optimal drawing of K5, with its crossing marked
r = solve_pdcr(ex["k5"].instance, SolveOptions(max_q=1))
emit_svg(r.witness, "k5.svg", "K5")
print("wrote k5.svg")
