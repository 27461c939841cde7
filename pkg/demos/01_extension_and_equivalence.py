"""
Drawing extension and equivalence
=================================

Two drawings of the same triangles can look alike and still differ, and a
predrawn cycle can block a crossing-free extension even though every piece
on its own extends.
"""

from pdcross import drawings_equivalent
from pdcross.extension import extend_planar
from pdcross.instances import gen_examples

ex = gen_examples()

# two triangles, the second drawn with the opposite orientation
pair = ex["fig1-pair"]
left, right = pair.instance.drawing, pair.extras["partner"].drawing
print("pair equivalent:", drawings_equivalent(left, right))
print("mirror equivalent:", drawings_equivalent(left, left.global_mirror()))

# the full instance has no crossing-free extension ...
fig3 = ex["fig3-instance"]
print("full instance extends:", extend_planar(fig3.instance) is not None)

# ... but both pieces do
for sub in fig3.extras["subinstances"]:
    print(f"  {sub.name} extends:", extend_planar(sub) is not None)

# flipping the inner triangle removes the obstruction
print("flipped extends:", extend_planar(ex["fig3-flipped"].instance) is not None)
