"""
A weighted critical gadget
==========================

Eight vertices, two predrawn 4-cycles joined by weighted spokes. Drawn
straight the gadget costs nothing; flipped, its cheapest drawing costs
2c + 2. Rings of gadgets between two triangles give instances with no
crossing-free extension.
"""

from pdcross.extension import is_extendable
from pdcross.instances import CriticalFamilyParams, gen_critical
from pdcross.model import is_conforming

for copies in (1, 2):
    fam = gen_critical(CriticalFamilyParams(c=3, copies=copies))
    g = fam.instance.graph
    print(f"copies={copies}: {len(g.vertices)} vertices, {len(g.edges)} edges, "
          f"extendable={is_extendable(fam.instance)}")

fam = gen_critical()
print("straight witness cost", fam.d1.cost, is_conforming(fam.d1, fam.gadget_straight, 0))
print("flipped witness cost ", fam.d2.cost, is_conforming(fam.d2, fam.gadget_flipped, fam.k))
for c in fam.d2.crossings:
    print("  ", c.edge_a, "x", c.edge_b, "cost", c.cost)

# weights as bundles of parallel unit edges
big = gen_critical(CriticalFamilyParams(expand_parallel=True))
print("expanded:", len(big.instance.graph.edges), "edges")
