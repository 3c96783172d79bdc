"""Exactness is checked function by function against the B-spline basis.

The verifier builds the open knot vector of the target spline space,
integrates every normalized basis function exactly via the knot-difference
identity, and compares with the weighted node sums.  Verifying against a
richer space than the rule was built for shows where exactness ends.
"""

import numpy as np

from splinequad import (
    Partition,
    SplineSpace,
    bspline_eval,
    bspline_integral,
    generate,
    verify_exactness,
)

partition = Partition((0.0, 1.0, 2.0, 3.0, 4.0))
space = SplineSpace(partition, degree=4, continuity=0)
print(f"space: degree 4, continuity 0, dimension {space.dimension}")
print(f"open knot vector: {space.knot_vector}")

# the basis is a partition of unity with known integrals
xs = np.linspace(0.0, 4.0, 9)
sums = [sum(bspline_eval(space, i, x) for i in range(space.dimension)) for x in xs]
print(f"partition of unity: max |sum - 1| = {max(abs(s - 1) for s in sums):.2e}")
print(f"sum of basis integrals = {sum(bspline_integral(space, i) for i in range(space.dimension))!r}")

rule = generate(partition, c=0, d=4, middle_index=3)
report = verify_exactness(rule, space)
print(f"\nrule vs its own space : max defect {report.max_defect:.3e}  passed={report.passed}")

# the same rule against a degree-6 space: no longer exact, by a wide margin
rich = SplineSpace(partition, degree=6, continuity=0)
report6 = verify_exactness(rule, rich)
print(f"rule vs degree-6 space: max defect {report6.max_defect:.3e}  passed={report6.passed} "
      f"(worst basis index {report6.worst_basis_index})")

# random members of the space inherit exactness from the basis
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    coeffs = rng.uniform(-1, 1, space.dimension)
    approx = float(rule.all_weights @ [
        sum(cc * bspline_eval(space, i, x) for i, cc in enumerate(coeffs))
        for x in rule.all_nodes])
    exact = sum(cc * bspline_integral(space, i) for i, cc in enumerate(coeffs))
    worst = max(worst, abs(approx - exact))
print(f"200 random splines: worst defect {worst:.3e}")
