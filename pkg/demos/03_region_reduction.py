"""
Contracting a region
====================

A region enclosed by a cycle is contracted to a single vertex. The gadget
probe says whether the cycle can still be flipped; when contraction would
make it flippable, a small triangle replaces the region instead.
"""

from pdcross.reduction import apply_reduction, contract_region, is_flippable
from pdcross.instances import gen_examples
from pdcross.solver import SolveOptions, solve_pdcr

ex = gen_examples()["fig6-flip"]
p, region, cycle = ex.instance, ex.extras["region"], ex.extras["cycle"]

print("before contraction:", is_flippable(p, cycle, region).verdict)
contracted, cmap = contract_region(p, region, cycle)
print("after contraction: ", is_flippable(contracted, cycle, {cmap[region[0]]}).verdict)

out = apply_reduction(p, region, cycle)
print(out.step.log_line())

# the triangle keeps the answer at q = 0 ...
print("reduced @0:", solve_pdcr(out.step.reduced, SolveOptions(max_q=0)).status)

# ... and the optimum, which lifts back to the original instance
r = solve_pdcr(p, SolveOptions(max_q=2, use_reduction=True))
print("pipeline qstar:", r.q_star)
for line in r.trace:
    print("  ", line)
