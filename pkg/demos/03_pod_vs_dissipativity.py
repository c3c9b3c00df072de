"""Two 2-d operators showing that the positive off-diagonal property and
dissipativity do not imply each other.

Run with:  python demos/03_pod_vs_dissipativity.py
"""

import numpy as np

from conesemi import (
    EuclideanNorm,
    LinOp,
    PolyCone,
    PolyhedralSet,
    certify_dissipative,
    has_positive_off_diagonal,
    is_dissipative_at,
    is_metzler,
)

orthant = PolyCone.standard_orthant(2)
euclid = EuclideanNorm(orthant)

print("== operator one: all entries 1 ==")
first = LinOp([[1.0, 1.0], [1.0, 1.0]])
pod = has_positive_off_diagonal(first, orthant)
print("positive off-diagonal:", pod.verdict)
ok, margin = is_dissipative_at(first, euclid, [1, 0])
print(f"dissipative at (1,0) for the 2-norm: {ok} (margin {margin:+.3f})")
rep = certify_dissipative(first, euclid, n_samples=100, seed=0)
print("sampled certificate:", rep.verdict, f"({len(rep.witnesses)} witnesses)")

print()
print("== operator two: rows (-1,-1) / (1,1) on the half-line x2 = 0, x1 >= 0 ==")
domain = PolyhedralSet(
    ineq=(np.array([[1.0, 0.0]]), np.array([0.0])),
    eq=(np.array([[0.0, 1.0]]), np.array([0.0])),
)
second = LinOp([[-1.0, -1.0], [1.0, 1.0]], domain=domain)
ok, margin = is_dissipative_at(second, euclid, [2, 0])
print(f"dissipative at (2,0): {ok} (margin {margin:+.3f})")
rep = certify_dissipative(second, euclid, n_samples=100, seed=0)
print("sampled certificate over the domain:", rep.verdict)
pod = has_positive_off_diagonal(LinOp(second.matrix), orthant)
w = pod.witnesses[0]
print("matrix-level positive off-diagonal:", pod.verdict,
      f"(witness x={w.point.tolist()}, phi={w.functional.tolist()}, margin {w.margin:+.0f})")

print()
print("== on the orthant the exact check is the off-diagonal sign pattern ==")
for M in ([[-5.0, 2.0], [3.0, -1.0]], [[-1.0, -0.1], [0.0, -1.0]]):
    agrees = has_positive_off_diagonal(LinOp(M), orthant).verdict == "holds"
    print(f"  {M}: sign test {is_metzler(M)}, pair check {agrees}")
