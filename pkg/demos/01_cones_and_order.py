"""Cones as order structure: membership, duality, positive parts.

Run with:  python demos/01_cones_and_order.py
"""

import numpy as np

from conesemi import PolyCone

print("== the standard orthant in R^2 ==")
orthant = PolyCone.standard_orthant(2)
print("rays:  ", orthant.generators.tolist())
print("facets:", orthant.facets.tolist(), "(self-dual)")
print("(1, 2) in cone:", orthant.contains([1, 2]))
print("(1, -0.001) in cone:", orthant.contains([1, -0.001]))
print("order: (0,0) <= (1,1):", orthant.leq([0, 0], [1, 1]))

print()
print("== a tilted cone: x1 >= |x2| ==")
diamond = PolyCone.from_generators([[1, 1], [1, -1]])
print("facets computed from the rays:", diamond.facets.tolist())
print("dual cone rays:", diamond.dual_cone().generators.tolist())

print()
print("== positive parts need a simplicial cone ==")
x = np.array([0.0, 1.0])
print(f"x = {x} is not in the cone; its least upper bound with 0 is")
print("x^+ =", diamond.positive_part(x))
print("check: x^+ in cone:", diamond.contains(diamond.positive_part(x)),
      " and x^+ - x in cone:", diamond.leq(x, diamond.positive_part(x)))

print()
print("== four rays over a square base: no lattice structure ==")
pyramid = PolyCone.from_generators([[1, 1, 1], [-1, 1, 1], [1, -1, 1], [-1, -1, 1]])
print("is_lattice:", pyramid.is_lattice(), "(4 extreme rays in dimension 3)")

print()
print("== total families of functionals ==")
phis = [orthant.certify_functional(f) for f in orthant.facets]
print("facet family total:", orthant.is_total(phis).verdict)
single = [orthant.certify_functional([1, 1])]
report = orthant.is_total(single)
print("single functional (1,1) total:", report.verdict)
w = report.witnesses[0]
print("witness: x =", np.round(w.point, 6), "is nonnegative against (1,1)",
      "but lies outside the cone")
